use anyhow::Result;
use hypercolor_core::verify::{Evaluation, MinimizerReport, SearchPlan};
use rayon::prelude::*;

/// Runs `f` on a pool of `threads` workers, or on rayon's default pool
/// (one per core) when `threads` is `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluates every assignment of the plan in parallel. Results come back in
/// index order, so the report does not depend on the number of workers.
pub fn run_plan(plan: SearchPlan<'_>) -> Result<MinimizerReport> {
    let evaluations: Vec<Evaluation> = (0..plan.len())
        .into_par_iter()
        .map(|i| plan.evaluate(i))
        .collect::<hypercolor_core::Result<_>>()?;
    Ok(plan.finish(evaluations))
}
