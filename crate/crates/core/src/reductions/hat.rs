use rayon::prelude::*;

use crate::error::{Error, Result};

/// Applies a single-instance problem to every instance. Elements may be
/// evaluated concurrently; answers come back in input order. The first
/// failing element (by index) is reported.
pub fn hat<I, A, F>(problem: F, instances: &[I]) -> Result<Vec<A>>
where
    I: Sync,
    A: Send,
    F: Fn(&I) -> Result<A> + Sync,
{
    let results: Vec<Result<A>> = instances.par_iter().map(&problem).collect();
    let mut out = Vec::with_capacity(results.len());
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(a) => out.push(a),
            Err(e) => return Err(Error::Element { index, source: Box::new(e) }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..200).collect();
        let ys = hat(|x| Ok(x * x), &xs).unwrap();
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }

    #[test]
    fn empty_family() {
        let ys: Vec<bool> = hat(|_: &u8| Ok(true), &[]).unwrap();
        assert!(ys.is_empty());
    }

    #[test]
    fn first_error_is_reported_with_index() {
        let xs = [1u64, 0, 3, 0];
        let err = hat(|&x| if x == 0 { Err(Error::rejected("zero")) } else { Ok(x) }, &xs).unwrap_err();
        match err {
            Error::Element { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
