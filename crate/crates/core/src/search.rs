//! Deterministic enumeration of coordinate vectors for witness searches.
//!
//! Vectors are visited in lexicographic order of scalar indices, so the first
//! witness found is the lexicographically least one and results are
//! reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Every candidate was visited.
    Exhausted,
    /// The candidate budget ran out first.
    BudgetExceeded,
}

/// Candidate scalars for a search at the given height.
#[derive(Clone, Debug)]
pub struct ScalarSet {
    pub all: Vec<Elem>,
    /// True when `all` is the whole field.
    pub complete: bool,
}

impl ScalarSet {
    pub fn new(f: &Field, bound: usize) -> ScalarSet {
        let mut all = f.search_scalars(bound);
        // zero first, then one, then the rest in enumeration order
        all.sort_by_key(|x| (!f.is_zero(x), !f.is_one(x)));
        ScalarSet {
            all,
            complete: f.is_finite(),
        }
    }
}

/// Visits nonzero vectors of length `n` over `scalars`, up to scaling when
/// `projective` is set and the scalar set is a whole finite field (first
/// nonzero coordinate equal to one). Stops at the first vector for which
/// `visit` returns `Some`.
pub fn find_vector<T>(
    f: &Field,
    n: usize,
    scalars: &ScalarSet,
    projective: bool,
    budget: u64,
    mut visit: impl FnMut(&[Elem]) -> Option<T>,
) -> SearchOutcome<T> {
    let s = scalars.all.len();
    if n == 0 || s == 0 {
        return SearchOutcome::Exhausted;
    }
    let one_idx = scalars.all.iter().position(|x| f.is_one(x));
    let normalize = projective && scalars.complete && one_idx.is_some();
    let mut idx = vec![0usize; n];
    let mut v: Vec<Elem> = vec![scalars.all[0].clone(); n];
    let mut count = 0u64;
    loop {
        // advance odometer (last coordinate fastest)
        let mut pos = n;
        loop {
            if pos == 0 {
                return SearchOutcome::Exhausted;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < s {
                v[pos] = scalars.all[idx[pos]].clone();
                break;
            }
            idx[pos] = 0;
            v[pos] = scalars.all[0].clone();
        }
        if normalize {
            let first = idx.iter().position(|&i| i != 0);
            match first {
                Some(p) if idx[p] != one_idx.unwrap() => {
                    // skip the whole block where coordinate p is not one
                    if idx[p] < one_idx.unwrap() {
                        continue;
                    }
                    for i in idx.iter_mut().skip(p + 1) {
                        *i = s - 1;
                    }
                    continue;
                }
                _ => {}
            }
        }
        if idx.iter().all(|&i| i == 0) {
            continue;
        }
        count += 1;
        if count > budget {
            return SearchOutcome::BudgetExceeded;
        }
        if let Some(t) = visit(&v) {
            return SearchOutcome::Found(t);
        }
    }
}

/// Linear combination `Σ c_i b_i` of basis vectors.
pub fn combine(f: &Field, coeffs: &[Elem], basis: &[Vec<Elem>]) -> Vec<Elem> {
    let n = basis.first().map(|b| b.len()).unwrap_or(0);
    let mut out = vec![f.zero(); n];
    for (c, b) in coeffs.iter().zip(basis) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            if !f.is_zero(x) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_count_over_gf3() {
        let f = Field::gf(3).unwrap();
        let s = ScalarSet::new(&f, 0);
        let mut count = 0;
        let out: SearchOutcome<()> = find_vector(&f, 3, &s, true, u64::MAX, |_| {
            count += 1;
            None
        });
        assert_eq!(out, SearchOutcome::Exhausted);
        // (3^3 - 1) / 2 projective points
        assert_eq!(count, 13);
        let mut all = 0;
        let _: SearchOutcome<()> = find_vector(&f, 2, &s, false, u64::MAX, |_| {
            all += 1;
            None
        });
        assert_eq!(all, 8);
    }

    #[test]
    fn budget_is_respected() {
        let f = Field::gf(2).unwrap().rational_function("t").unwrap();
        let s = ScalarSet::new(&f, 1);
        let out: SearchOutcome<()> = find_vector(&f, 4, &s, true, 10, |_| None);
        assert_eq!(out, SearchOutcome::BudgetExceeded);
    }
}
