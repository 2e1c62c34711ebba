use super::report::{Order, ResidualReport, EXACT_RELATIVE};
use crate::error::{usage, Result};
use crate::fields::GridSpec;
use crate::models::PrimState;

/// Runs `checker` on states from `generator` over a refinement sequence and
/// attaches `log2(r_h / r_{h/2})` (L-infinity) to every report after the first.
///
/// A coarsest-grid relative residual at round-off level marks every report
/// [`Order::Exact`].
pub fn convergence_order<G, C>(generator: G, checker: C, grids: &[GridSpec]) -> Result<Vec<ResidualReport>>
where
    G: Fn(GridSpec) -> Result<PrimState>,
    C: Fn(&PrimState) -> Result<ResidualReport>,
{
    check_refinement(grids)?;
    let reports = grids.iter().map(|g| generator(*g).and_then(|s| checker(&s))).collect::<Result<Vec<_>>>()?;
    Ok(attach_orders(reports))
}

pub(crate) fn check_refinement(grids: &[GridSpec]) -> Result<()> {
    if grids.len() < 2 {
        return Err(usage("a convergence study needs at least two grids"));
    }
    for pair in grids.windows(2) {
        let (c, f) = (pair[0], pair[1]);
        if f.n() != 2 * c.n() || f.dim() != c.dim() || f.length() != c.length() {
            return Err(usage(format!("grid n={} is not a factor-2 refinement of n={}", f.n(), c.n())));
        }
    }
    Ok(())
}

/// Orders for reports that are already ordered coarse to fine.
pub fn attach_orders(mut reports: Vec<ResidualReport>) -> Vec<ResidualReport> {
    let exact = reports.first().is_some_and(|r| r.relative() <= EXACT_RELATIVE);
    for i in 1..reports.len() {
        reports[i].order =
            Some(if exact { Order::Exact } else { Order::Observed((reports[i - 1].linf / reports[i].linf).log2()) });
    }
    if exact {
        if let Some(first) = reports.first_mut() {
            first.order = Some(Order::Exact);
        }
    }
    reports
}

/// Order of the finest grid pair.
pub fn final_order(reports: &[ResidualReport]) -> Option<Order> {
    reports.last().and_then(|r| r.order)
}

/// Standard 1D sequence `n = base, 2 base, ...`.
pub fn refinement_grids(dim: usize, base: usize, levels: usize, length: f64) -> Result<Vec<GridSpec>> {
    (0..levels).map(|l| GridSpec::new(dim, base << l, length)).collect()
}
