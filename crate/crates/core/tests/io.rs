use std::fs;

use jordan_gft::io::{load_adjacency, load_signal, load_spectrum, GraphFormat};
use jordan_gft::{Complex64, Error, GaussRational, Graph, Matrix, Scalar};
use tempfile::TempDir;

type Q = GaussRational;

#[test]
fn matrix_market_and_edge_list_describe_the_same_graph() {
    let dir = TempDir::new().unwrap();
    let mtx = dir.path().join("g.mtx");
    let csv = dir.path().join("g.csv");
    fs::write(&mtx, "%%MatrixMarket matrix coordinate real general\n4 4 4\n1 2 0.5\n2 3 2\n3 4 -1\n4 1 3\n").unwrap();
    fs::write(&csv, "# comment\nsrc,dst,weight\n1,2,0.5\n2,3,2\n3,4,-1\n4,1,1\n4,1,2\n").unwrap();
    assert_eq!(GraphFormat::from_path(&mtx), GraphFormat::MatrixMarket);
    assert_eq!(GraphFormat::from_path(&csv), GraphFormat::EdgeListCsv);
    let a: Graph<Q> = load_adjacency(&mtx, GraphFormat::MatrixMarket, None).unwrap();
    let b: Graph<Q> = load_adjacency(&csv, GraphFormat::EdgeListCsv, None).unwrap();
    assert_eq!(a.adjacency(), b.adjacency());
    assert_eq!(a.adjacency().get(1, 0), &Q::from_ratio(1, 2));
    assert_eq!(a.edge_count(), 4);
}

#[test]
fn symmetric_matrix_market_is_expanded() {
    let text = "%%MatrixMarket matrix coordinate integer symmetric\n3 3 2\n2 1 4\n3 3 1\n";
    let g: Graph<Q> = jordan_gft::io::parse_matrix_market(text, None).unwrap();
    assert_eq!(g.adjacency(), &Matrix::from_i64_rows(&[&[0, 4, 0], &[4, 0, 0], &[0, 0, 1]]));
}

#[test]
fn isolated_trailing_nodes_need_node_count() {
    let g: Graph<Complex64> = jordan_gft::io::parse_edge_list("1,2\n", Some(5)).unwrap();
    assert_eq!(g.node_count(), 5);
    let err = jordan_gft::io::parse_edge_list::<Q>("1,7\n", Some(5)).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn signal_files() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("s.csv");
    fs::write(&p, "node,value\n3,1.5\n1,-2\n").unwrap();
    let s = load_signal::<Q>(&p, 4).unwrap();
    assert_eq!(s.values(), &[Q::from_i64(-2), Q::zero(), Q::from_ratio(3, 2), Q::zero()]);
    fs::write(&p, "1,1\n1,2\n").unwrap();
    assert!(matches!(load_signal::<Q>(&p, 4), Err(Error::Parse { line: 2, .. })));
    fs::write(&p, "9,1\n").unwrap();
    assert!(matches!(load_signal::<Q>(&p, 4), Err(Error::UnknownNode { node: 9, node_count: 4 })));
}

#[test]
fn spectrum_files() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("spec.csv");
    fs::write(&p, "re,im\n1,0\n0.5,-2\n3\n").unwrap();
    let v = load_spectrum::<Q>(&p).unwrap();
    assert_eq!(v, vec![Q::one(), Q::new(Q::from_ratio(1, 2).re().clone(), Q::from_i64(-2).re().clone()), Q::from_i64(3)]);
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_spectrum::<Q>(std::path::Path::new("/nonexistent/spec.csv")).unwrap_err();
    assert!(matches!(err, Error::Io(_)));
    assert_eq!(err.exit_code(), 2);
}
