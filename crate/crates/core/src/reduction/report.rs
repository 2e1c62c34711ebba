use std::fmt::{self, Write as _};

use crate::fields::{ScalarField, TensorField, VectorField};

/// Relative residual at or below which an identity counts as holding to round-off.
pub const EXACT_RELATIVE: f64 = 100.0 * f64::EPSILON;

/// Observed convergence order between two grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    /// Residual is round-off on the coarsest grid.
    Exact,
    Observed(f64),
}

impl Order {
    /// `true` for [`Order::Exact`] or an observed order of at least `min`.
    pub fn at_least(&self, min: f64) -> bool {
        match self {
            Order::Exact => true,
            Order::Observed(p) => *p >= min,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Exact => f.write_str("exact"),
            Order::Observed(p) => write!(f, "{p:.3}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermNorm {
    pub name: String,
    pub linf: f64,
}

/// Residual norms of one identity on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub identity: String,
    pub n: usize,
    pub linf: f64,
    pub l2: f64,
    /// Magnitude of the largest side or contribution, for relative measures.
    pub scale: f64,
    pub terms: Vec<TermNorm>,
    pub order: Option<Order>,
}

impl ResidualReport {
    pub fn relative(&self) -> f64 {
        if self.linf == 0.0 {
            0.0
        } else {
            self.linf / self.scale.max(f64::MIN_POSITIVE)
        }
    }

    pub(crate) fn scalar(identity: &str, residual: &ScalarField, scale: f64, terms: Vec<TermNorm>) -> Self {
        Self {
            identity: identity.to_string(),
            n: residual.grid().n(),
            linf: residual.max_abs(),
            l2: residual.l2(),
            scale,
            terms,
            order: None,
        }
    }

    pub(crate) fn vector(identity: &str, residual: &VectorField, scale: f64, terms: Vec<TermNorm>) -> Self {
        let l2 = residual.comps().iter().map(|c| c.l2().powi(2)).sum::<f64>().sqrt();
        Self {
            identity: identity.to_string(),
            n: residual.grid().n(),
            linf: residual.max_abs(),
            l2,
            scale,
            terms,
            order: None,
        }
    }

    pub(crate) fn tensor(identity: &str, residual: &TensorField, scale: f64, terms: Vec<TermNorm>) -> Self {
        let l2 = residual.comps().iter().map(|c| c.l2().powi(2)).sum::<f64>().sqrt();
        Self {
            identity: identity.to_string(),
            n: residual.grid().n(),
            linf: residual.max_abs(),
            l2,
            scale,
            terms,
            order: None,
        }
    }

    pub const CSV_HEADER: &'static str = "identity,n,linf,l2,order,term,term_linf";

    /// One CSV row per term (a single row with empty term columns if there are none).
    pub fn csv_rows(&self) -> String {
        let order = self.order.map(|o| o.to_string()).unwrap_or_default();
        let mut out = String::new();
        if self.terms.is_empty() {
            let _ = writeln!(out, "{},{},{:e},{:e},{},,", self.identity, self.n, self.linf, self.l2, order);
        }
        for t in &self.terms {
            let _ = writeln!(
                out,
                "{},{},{:e},{:e},{},{},{:e}",
                self.identity, self.n, self.linf, self.l2, order, t.name, t.linf
            );
        }
        out
    }
}

pub(crate) fn term(name: &str, linf: f64) -> TermNorm {
    TermNorm { name: name.to_string(), linf }
}

/// Human-readable table of reports.
pub fn summary_table(reports: &[ResidualReport]) -> String {
    let mut out = String::new();
    let _ =
        writeln!(out, "{:<36} {:>6} {:>12} {:>12} {:>12} {:>8}", "identity", "n", "linf", "l2", "relative", "order");
    for r in reports {
        let order = r.order.map(|o| o.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<36} {:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>8}",
            r.identity,
            r.n,
            r.linf,
            r.l2,
            r.relative(),
            order
        );
    }
    out
}
