//! Serializable analysis report (JSON and per-subspace CSV).
//!
//! Exact-backend numbers are written as rational strings (`"-3/4"`) so a
//! report parses back to the same values; float numbers are JSON numbers.

use std::io::Write;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::config::Backend;
use crate::error::{Error, Result};
use crate::scalar::{Complex64, GaussRational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Exact(String),
    Float(f64),
}

impl Number {
    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Float(v) => *v,
            Number::Exact(s) => GaussRational::parse_rational(s)
                .map(|r| GaussRational::new(r, BigRational::from_integer(0.into())).to_c64().re)
                .unwrap_or(f64::NAN),
        }
    }

    fn to_rational(&self) -> Option<BigRational> {
        match self {
            Number::Exact(s) => GaussRational::parse_rational(s),
            Number::Float(v) => Some(GaussRational::from_c64(Complex64::new(*v, 0.0)).re().clone()),
        }
    }
}

impl std::fmt::Display for Number {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Number::Exact(s) => f.write_str(s),
            Number::Float(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: Number,
    pub im: Number,
}

impl ComplexValue {
    pub fn from_scalar<S: Scalar>(v: &S) -> Self {
        if S::EXACT {
            let e = v.to_exact();
            Self {
                re: Number::Exact(e.re().to_string()),
                im: Number::Exact(e.im().to_string()),
            }
        } else {
            let c = v.to_c64();
            Self {
                re: Number::Float(c.re),
                im: Number::Float(c.im),
            }
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> Result<S> {
        let bad = || Error::Conformance(format!("unreadable number {}{:+}i", self.re, self.im.to_f64()));
        let re = self.re.to_rational().ok_or_else(bad)?;
        let im = self.im.to_rational().ok_or_else(bad)?;
        Ok(S::from_exact(&GaussRational::new(re, im)))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub index: usize,
    pub lambda: ComplexValue,
    /// Algebraic multiplicity `a_i`.
    pub algebraic: usize,
    /// Geometric multiplicity `g_i`.
    pub geometric: usize,
    /// Size of the largest Jordan block `m_i`.
    pub max_block: usize,
    /// Jordan block sizes `r_ij`, in chain order.
    pub partial: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    /// `"i.j"` with zero-based eigenvalue and chain indices.
    pub id: String,
    pub eigen: usize,
    pub chain: usize,
    pub r: usize,
    pub lambda: ComplexValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy: Option<ComplexValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_magnitude: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_frac: Option<f64>,
    /// 1 for the most energetic subspace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tv: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tv_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tv_within_bound: Option<bool>,
    /// 1 for the lowest total variation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tv_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalSummary {
    pub energy: ComplexValue,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tv: Option<f64>,
}

/// Residuals recomputed from the final basis, scaled by the condition number
/// `κ = ‖V‖₁‖V⁻¹‖₁` where noted. All but `tv_forms` are exactly zero on the
/// exact backend.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `‖AV − VJ‖₁ / ((‖A‖₁ + ‖J‖₁)·‖V‖₁)`.
    pub intertwining: f64,
    /// `‖WᴴV − I‖₁ / κ`.
    pub biorthogonality: f64,
    /// Bound on `max ‖P_ij P_kl − δ P_ij‖₁`, over `κ`.
    pub projector_pairwise: f64,
    /// `max_i ‖Σ_j P_ij − Z_i0‖₁ / κ`.
    pub projector_component: f64,
    /// `‖Σ P_ij − I‖₁ / κ`.
    pub projector_resolution: f64,
    /// `‖s − Σ ŝ_ij‖₁ / (κ‖s‖₁)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruction: Option<f64>,
    /// `|⟨s,s⟩ − ⟨s̃_V, s̃_W⟩| / (κ‖s‖²)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parseval: Option<f64>,
    /// `|Σ ⟨α,β⟩ − ‖s‖²| / (κ‖s‖²)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_sum: Option<f64>,
    /// Largest relative disagreement of the three TV evaluations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tv_forms: Option<f64>,
}

impl Residuals {
    pub fn named(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![
            ("intertwining", self.intertwining),
            ("biorthogonality", self.biorthogonality),
            ("projector_pairwise", self.projector_pairwise),
            ("projector_component", self.projector_component),
            ("projector_resolution", self.projector_resolution),
        ];
        for (name, v) in [
            ("reconstruction", self.reconstruction),
            ("parseval", self.parseval),
            ("energy_sum", self.energy_sum),
            ("tv_forms", self.tv_forms),
        ] {
            if let Some(v) = v {
                out.push((name, v));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub backend: Backend,
    pub node_count: usize,
    pub edge_count: usize,
    pub eps_zero: f64,
    pub eps_cluster: f64,
    pub tv_normalized_shift: bool,
    pub eigenvalues: Vec<EigenvalueRecord>,
    pub subspaces: Vec<SubspaceRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<SignalSummary>,
    pub residuals: Residuals,
    /// Bound on every residual for the float backend and on `tv_forms`.
    pub check_tolerance: f64,
    pub conformant: bool,
    /// Names of the residuals that exceeded the tolerance.
    #[serde(default)]
    pub failures: Vec<String>,
}

impl DecompositionReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Conformance(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    /// One row per subspace: id, lambda_re, lambda_im, r, energy_re,
    /// energy_im, energy_frac, tv, tv_bound. Absent values are empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["id", "lambda_re", "lambda_im", "r", "energy_re", "energy_im", "energy_frac", "tv", "tv_bound"])
            .map_err(io)?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        for s in &self.subspaces {
            w.write_record([
                s.id.clone(),
                s.lambda.re.to_string(),
                s.lambda.im.to_string(),
                s.r.to_string(),
                opt(s.energy.as_ref().map(|e| e.re.to_string())),
                opt(s.energy.as_ref().map(|e| e.im.to_string())),
                opt(s.energy_frac.map(|v| v.to_string())),
                opt(s.tv.map(|v| v.to_string())),
                opt(s.tv_bound.map(|v| v.to_string())),
            ])
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}
