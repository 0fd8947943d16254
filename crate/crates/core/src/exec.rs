//! Sequential or data-parallel evaluation of independent work items.
//!
//! Without the `parallel` feature both modes run sequentially, so results
//! never depend on how the crate was built.

/// How independent checks are scheduled. Output is identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Applies `f` to every item and concatenates the results in item order.
pub fn flat_map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
        }
        _ => items.iter().flat_map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_preserve_order() {
        let items: Vec<u32> = (0..1000).collect();
        let f = |x: &u32| vec![*x, x * 2];
        assert_eq!(
            flat_map(ExecMode::Sequential, &items, f),
            flat_map(ExecMode::Parallel, &items, f)
        );
    }
}
