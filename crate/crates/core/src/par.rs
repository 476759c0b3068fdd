//! Parallel fan-out with deterministic reduction.
//!
//! With the `parallel` feature (default) candidate evaluations run on the
//! rayon pool; without it the same code runs sequentially. Reductions are
//! keyed by `(score, index)` so the winner is independent of scheduling:
//! ties in score go to the lowest candidate index (first-found in seed order).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Which execution mode this build uses; benches report it in their IDs.
pub fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "serial"
    }
}

#[derive(Clone, Debug)]
pub struct Scored<T> {
    pub score: f64,
    pub index: usize,
    pub payload: T,
}

fn better<T>(a: Scored<T>, b: Scored<T>) -> Scored<T> {
    // NaN never wins; equal scores resolve to the lower index.
    if b.score > a.score || (b.score == a.score && b.index < a.index) || a.score.is_nan() {
        b
    } else {
        a
    }
}

/// Evaluates `eval(i)` for `i in 0..count` and returns the maximum-score
/// candidate, ties broken by lowest index. Returns `None` when `count == 0`.
pub fn max_scored<T, F>(count: usize, eval: F) -> Option<Scored<T>>
where
    T: Send,
    F: Fn(usize) -> Scored<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(&eval).reduce_with(better)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(eval).reduce(better)
    }
}

/// Minimizing variant of [`max_scored`]: lowest score wins, ties to lowest index.
pub fn min_scored<T, F>(count: usize, eval: F) -> Option<Scored<T>>
where
    T: Send,
    F: Fn(usize) -> Scored<T> + Sync + Send,
{
    let flipped = max_scored(count, |i| {
        let s = eval(i);
        Scored {
            score: -s.score,
            index: s.index,
            payload: s.payload,
        }
    })?;
    Some(Scored {
        score: -flipped.score,
        index: flipped.index,
        payload: flipped.payload,
    })
}

/// Maps `f` over `0..count` preserving index order in the output.
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_break_to_lowest_index() {
        let best = max_scored(8, |i| Scored {
            score: if i % 2 == 0 { 1.0 } else { 0.5 },
            index: i,
            payload: i,
        })
        .unwrap();
        assert_eq!(best.index, 0);
    }

    #[test]
    fn min_scored_flips() {
        let best = min_scored(5, |i| Scored {
            score: (i as f64 - 2.0).abs(),
            index: i,
            payload: (),
        })
        .unwrap();
        assert_eq!(best.index, 2);
    }

    #[test]
    fn map_indexed_preserves_order() {
        let v = map_indexed(100, |i| i * i);
        assert_eq!(v[7], 49);
        assert_eq!(v.len(), 100);
    }
}
