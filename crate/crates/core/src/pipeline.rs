//! End-to-end analysis: decomposition, projectors, GFT, energies and TV.

use std::path::Path;

use log::info;

use crate::config::{AnalysisConfig, Backend, EigenSource};
use crate::error::{Error, Result};
use crate::gft::{energy_ranking, gft, GftDecomposition, RankedComponent};
use crate::graph::{Graph, GraphSignal};
use crate::io::{load_adjacency, load_signal, load_spectrum, GraphFormat};
use crate::jordan::{jordan_decomposition, EigenMode, JordanBasis};
use crate::matrix::{inner, norm1, Tolerances};
use crate::report::{ComplexValue, DecompositionReport, EigenvalueRecord, Residuals, SignalSummary, SubspaceRecord};
use crate::scalar::{Complex64, GaussRational, Scalar};
use crate::spectral::{dual_basis, factored_pairwise_bound, projector_sum_residuals, DualBasis};
use crate::tv::{tv_report, TvReport};

/// Which parts of the analysis a run produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Eigenstructure, TV and, with a signal, the GFT.
    Decompose,
    /// Eigenstructure and the GFT of the signal.
    Gft,
    /// Eigenstructure and TV.
    Tv,
    /// Eigenstructure and residuals only.
    Check,
}

impl Stage {
    fn wants_gft(self) -> bool {
        matches!(self, Stage::Decompose | Stage::Gft)
    }

    fn wants_tv(self) -> bool {
        matches!(self, Stage::Decompose | Stage::Tv)
    }
}

/// Every intermediate of one analysis run.
#[derive(Clone, Debug)]
pub struct Analysis<S: Scalar> {
    pub graph: Graph<S>,
    pub signal: Option<GraphSignal<S>>,
    pub basis: JordanBasis<S>,
    pub dual: DualBasis<S>,
    pub tv: Option<TvReport>,
    pub gft: Option<GftDecomposition<S>>,
    pub ranking: Option<Vec<RankedComponent<S>>>,
    pub tolerances: Tolerances,
    pub tv_normalized_shift: bool,
}

impl<S: Scalar> Analysis<S> {
    pub fn run(
        graph: Graph<S>,
        signal: Option<&GraphSignal<S>>,
        mode: &EigenMode<S>,
        tol: &Tolerances,
        tv_normalized_shift: bool,
        stage: Stage,
    ) -> Result<Self> {
        if stage == Stage::Gft && signal.is_none() {
            return Err(Error::Config("the gft stage needs a signal".into()));
        }
        if let Some(s) = signal {
            graph.check_signal(s)?;
        }
        let basis = jordan_decomposition(graph.adjacency(), mode, tol)?;
        info!(
            "{} nodes: {} eigenvalues, {} Jordan subspaces",
            graph.node_count(),
            basis.structure().len(),
            basis.subspaces().len()
        );
        let dual = dual_basis(&basis, tol)?;
        let tv = if stage.wants_tv() {
            Some(tv_report(&graph, &basis, signal, tv_normalized_shift, tol)?)
        } else {
            None
        };
        let (gft, ranking) = match signal.filter(|_| stage.wants_gft()) {
            Some(s) => {
                let d = gft(s, &basis, &dual)?;
                let ranking = match energy_ranking(&d) {
                    Ok(r) => Some(r),
                    Err(Error::ZeroSignal) => None,
                    Err(e) => return Err(e),
                };
                (Some(d), ranking)
            }
            None => (None, None),
        };
        Ok(Self {
            graph,
            signal: signal.cloned(),
            basis,
            dual,
            tv,
            gft,
            ranking,
            tolerances: *tol,
            tv_normalized_shift,
        })
    }

    /// Residuals recomputed from the basis, dual basis and decomposition.
    pub fn residuals(&self) -> Residuals {
        let a = self.graph.adjacency();
        let v = self.basis.v();
        let kappa = (v.one_norm() * self.dual.w_adjoint().one_norm()).max(1.0);
        let scale = ((a.one_norm() + self.basis.j().one_norm()) * v.one_norm()).max(f64::MIN_POSITIVE);
        let (component, resolution) = projector_sum_residuals(&self.basis, &self.dual);
        let mut r = Residuals {
            intertwining: self.basis.intertwining_residual(a) / scale,
            biorthogonality: self.dual.biorthogonality_residual(&self.basis) / kappa,
            projector_pairwise: factored_pairwise_bound(&self.basis, &self.dual) / kappa,
            projector_component: component / kappa,
            projector_resolution: resolution / kappa,
            ..Residuals::default()
        };
        if let Some(d) = &self.gft {
            let size1 = norm1(d.signal());
            let size2 = inner(d.signal(), d.signal()).abs();
            let rel = |x: f64, size: f64| if size > 0.0 { x / (kappa * size) } else { x };
            r.reconstruction = Some(rel(d.reconstruction_residual(), size1));
            r.parseval = Some(rel(d.parseval_residual(), size2));
            r.energy_sum = Some(rel(d.energy_residual(), size2));
        }
        if let Some(tv) = &self.tv {
            r.tv_forms = Some(tv.max_spread());
        }
        r
    }

    pub fn report(&self, check_tolerance: f64) -> DecompositionReport {
        let structure = self.basis.structure();
        let eigenvalues = structure
            .eigenvalues()
            .iter()
            .enumerate()
            .map(|(index, e)| EigenvalueRecord {
                index,
                lambda: ComplexValue::from_scalar(&e.value),
                algebraic: e.algebraic,
                geometric: e.geometric(),
                max_block: e.index(),
                partial: e.partial.clone(),
            })
            .collect();
        let subspaces = self
            .basis
            .subspaces()
            .iter()
            .map(|id| {
                let mut rec = SubspaceRecord {
                    id: format!("{}.{}", id.eigen, id.chain),
                    eigen: id.eigen,
                    chain: id.chain,
                    r: id.dim,
                    lambda: ComplexValue::from_scalar(self.basis.eigenvalue_of(id)),
                    energy: None,
                    energy_magnitude: None,
                    energy_frac: None,
                    energy_rank: None,
                    tv: None,
                    tv_bound: None,
                    tv_within_bound: None,
                    tv_rank: None,
                };
                if let Some(d) = &self.gft {
                    let c = d.component(id).expect("component per subspace");
                    rec.energy = Some(ComplexValue::from_scalar(&c.energy));
                    rec.energy_magnitude = Some(c.energy.abs());
                }
                if let Some(ranking) = &self.ranking {
                    if let Some((k, r)) = ranking.iter().enumerate().find(|(_, r)| r.id == *id) {
                        rec.energy_rank = Some(k + 1);
                        rec.energy_frac = Some(r.fraction);
                    }
                }
                if let Some(tv) = &self.tv {
                    if let Some((k, t)) = tv.subspaces.iter().enumerate().find(|(_, t)| t.id == *id) {
                        rec.tv = Some(t.tv.value());
                        rec.tv_bound = Some(t.bound);
                        rec.tv_within_bound = Some(t.within_bound);
                        rec.tv_rank = Some(k + 1);
                    }
                }
                rec
            })
            .collect();
        let signal = self.signal.as_ref().map(|s| SignalSummary {
            energy: ComplexValue::from_scalar(&inner(s.values(), s.values())),
            tv: self.tv.as_ref().and_then(|t| t.signal_tv),
        });
        let residuals = self.residuals();
        let mut failures: Vec<String> = residuals
            .named()
            .into_iter()
            .filter(|(name, v)| {
                let limit = if S::EXACT && *name != "tv_forms" { 0.0 } else { check_tolerance };
                v.partial_cmp(&limit).is_none_or(|o| o.is_gt())
            })
            .map(|(name, _)| name.to_owned())
            .collect();
        if self.tv.as_ref().is_some_and(|t| !t.all_within_bound()) {
            failures.push("tv_bound".to_owned());
        }
        DecompositionReport {
            backend: if S::EXACT { Backend::Exact } else { Backend::Float },
            node_count: self.graph.node_count(),
            edge_count: self.graph.edge_count(),
            eps_zero: self.tolerances.zero,
            eps_cluster: self.tolerances.cluster,
            tv_normalized_shift: self.tv_normalized_shift,
            eigenvalues,
            subspaces,
            signal,
            residuals,
            check_tolerance,
            conformant: failures.is_empty(),
            failures,
        }
    }
}

/// Loads the inputs named by `cfg` and runs the analysis on its backend.
pub fn run_pipeline(cfg: &AnalysisConfig, graph_path: &Path, signal_path: Option<&Path>, stage: Stage) -> Result<DecompositionReport> {
    cfg.validate()?;
    match cfg.backend {
        Backend::Exact => run_with::<GaussRational>(cfg, graph_path, signal_path, stage),
        Backend::Float => run_with::<Complex64>(cfg, graph_path, signal_path, stage),
    }
}

fn run_with<S: Scalar>(cfg: &AnalysisConfig, graph_path: &Path, signal_path: Option<&Path>, stage: Stage) -> Result<DecompositionReport> {
    let format = cfg.graph_format.unwrap_or_else(|| GraphFormat::from_path(graph_path));
    let graph: Graph<S> = load_adjacency(graph_path, format, cfg.node_count)?;
    let signal = signal_path
        .map(|p| load_signal::<S>(p, graph.node_count()))
        .transpose()?;
    let mode = match (&cfg.eigenvalues, &cfg.spectrum_file) {
        (EigenSource::Supplied, Some(p)) => EigenMode::Supplied(load_spectrum(p)?),
        _ => EigenMode::computed(),
    };
    let analysis = Analysis::run(graph, signal.as_ref(), &mode, &cfg.tolerances(), cfg.tv_normalized_shift, stage)?;
    Ok(analysis.report(cfg.check_tolerance))
}
