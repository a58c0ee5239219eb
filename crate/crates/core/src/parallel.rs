//! Data-parallel mapping with deterministic (input-order) results.
//!
//! With the `parallel` feature (default) the maps fan out over the rayon
//! pool; without it they run sequentially with identical results. Reductions
//! over floating-point values are always performed sequentially in input
//! order, so outputs are bit-identical regardless of thread count.

/// Map `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Map `f` over `items`, preserving input order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_ordered<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Sequential reference implementation, kept unconditionally so benchmarks
/// can compare both paths in one build.
pub fn map_ordered_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Fallible ordered map; the first error (in input order) wins.
#[cfg(feature = "parallel")]
pub fn try_map_ordered<T, U, F>(items: &[T], f: F) -> crate::error::Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> crate::error::Result<U> + Sync + Send,
{
    use rayon::prelude::*;
    let out: Vec<crate::error::Result<U>> = items.par_iter().map(f).collect();
    out.into_iter().collect()
}

/// Fallible ordered map; the first error (in input order) wins.
#[cfg(not(feature = "parallel"))]
pub fn try_map_ordered<T, U, F>(items: &[T], f: F) -> crate::error::Result<Vec<U>>
where
    F: Fn(&T) -> crate::error::Result<U>,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..257).collect();
        let ys = map_ordered(&xs, |&x| x * x);
        let zs = map_ordered_seq(&xs, |&x| x * x);
        assert_eq!(ys, zs);
    }

    #[test]
    fn try_map_propagates_errors() {
        let xs: Vec<u64> = (0..16).collect();
        let r = try_map_ordered(&xs, |&x| {
            if x == 7 {
                Err(crate::error::Error::domain("boom"))
            } else {
                Ok(x)
            }
        });
        assert!(r.is_err());
    }
}
