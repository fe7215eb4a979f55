//! Index-range reductions with deterministic results. With the `parallel`
//! feature they run on the rayon pool; without it they are plain loops.
//! Either way the smallest index wins ties and the first error by index is
//! the one reported.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;

/// The value for the smallest index where `f` yields `Some`, or the error at
/// a smaller index.
pub fn find_first<T, F>(range: Range<usize>, f: F) -> Result<Option<T>>
where
    T: Send,
    F: Fn(usize) -> Result<Option<T>> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    let hit = range.into_par_iter().find_map_first(|i| f(i).transpose());
    #[cfg(not(feature = "parallel"))]
    let hit = range.into_iter().find_map(|i| f(i).transpose());
    hit.transpose()
}

/// `(key, index)` with the smallest key, smallest index on ties.
pub fn min_by_key<K, F>(range: Range<usize>, f: F) -> Result<Option<(K, usize)>>
where
    K: Ord + Send,
    F: Fn(usize) -> Result<K> + Sync + Send,
{
    type Item<K> = (usize, Result<K>);
    fn pick<K: Ord>(a: Item<K>, b: Item<K>) -> Item<K> {
        match (&a.1, &b.1) {
            (Err(_), Err(_)) => {
                if a.0 <= b.0 {
                    a
                } else {
                    b
                }
            }
            (Err(_), _) => a,
            (_, Err(_)) => b,
            (Ok(ka), Ok(kb)) => {
                if (ka, a.0) <= (kb, b.0) {
                    a
                } else {
                    b
                }
            }
        }
    }
    #[cfg(feature = "parallel")]
    let best = range.into_par_iter().map(|i| (i, f(i))).reduce_with(pick);
    #[cfg(not(feature = "parallel"))]
    let best = range.into_iter().map(|i| (i, f(i))).reduce(pick);
    match best {
        None => Ok(None),
        Some((i, k)) => k.map(|k| Some((k, i))),
    }
}

/// `f` over the range in index order, keeping the `Some` values.
pub fn filter_map<T, F>(range: Range<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<Option<T>> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    let all: Vec<Result<Option<T>>> = range.into_par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    let all: Vec<Result<Option<T>>> = range.into_iter().map(f).collect();
    let mut out = Vec::new();
    for item in all {
        if let Some(t) = item? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `f` over the range in index order.
pub fn map<T, F>(range: Range<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    filter_map(range, |i| f(i).map(Some))
}
