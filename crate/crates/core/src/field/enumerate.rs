//! Deterministic enumeration and sampling of field elements.

use alloc::vec;
use alloc::vec::Vec;

use super::poly::{self, Poly};
use super::{Elem, Field, LevelKind};

impl Field {
    /// Every element of a finite field exactly once, or, at function field
    /// levels, every element whose numerator and denominator degrees are at
    /// most `bound` (applied recursively to coefficients).
    ///
    /// Order: denominators by degree then coefficients, numerators likewise.
    pub fn elements(&self, bound: usize) -> Vec<Elem> {
        match self.level_kind() {
            LevelKind::Galois(g) => (0..g.size()).map(Elem::Gf).collect(),
            LevelKind::Quotient(base, m) => {
                let coeffs = base.elements(bound);
                tuples(&coeffs, m.len() - 1)
                    .into_iter()
                    .map(|r| Elem::Res(poly::trim(base, r)))
                    .collect()
            }
            LevelKind::RatFun(base) => {
                let coeffs = base.elements(bound);
                let polys = polys_up_to(base, &coeffs, bound);
                let mut out = Vec::new();
                for den in polys.iter().filter(|p| {
                    p.last().map(|c| base.is_one(c)).unwrap_or(false)
                }) {
                    for num in &polys {
                        if num.is_empty() {
                            if den.len() == 1 {
                                out.push(self.zero());
                            }
                            continue;
                        }
                        if den.len() > 1 {
                            let g = poly::gcd(base, num, den).expect("proven base");
                            if g.len() > 1 {
                                continue;
                            }
                        }
                        out.push(self.fraction(num.clone(), den.clone()).expect("nonzero den"));
                    }
                }
                out
            }
        }
    }

    pub fn elements_iter(&self, bound: usize) -> impl Iterator<Item = Elem> {
        self.elements(bound).into_iter()
    }

    /// Scalars for projective searches: all elements of a finite field, or
    /// "integral" elements (polynomials of degree at most `bound` in each
    /// transcendental, with integral coefficients) otherwise. Any vector over
    /// the field is proportional to one with integral coordinates, so
    /// restricting isotropy searches to these loses nothing but height.
    pub fn search_scalars(&self, bound: usize) -> Vec<Elem> {
        if self.is_finite() {
            return self.elements(0);
        }
        match self.level_kind() {
            LevelKind::Galois(_) => unreachable!(),
            LevelKind::Quotient(base, m) => {
                let coeffs = base.search_scalars(bound);
                tuples(&coeffs, m.len() - 1)
                    .into_iter()
                    .map(|r| Elem::Res(poly::trim(base, r)))
                    .collect()
            }
            LevelKind::RatFun(base) => {
                let coeffs = base.search_scalars(bound);
                polys_up_to(base, &coeffs, bound)
                    .into_iter()
                    .map(|p| self.fraction(p, vec![base.one()]).expect("unit den"))
                    .collect()
            }
        }
    }

    /// A pseudo-random element drawn from `next`, with degrees at most
    /// `bound` at function field levels.
    pub fn random_element(&self, next: &mut dyn FnMut() -> u64, bound: usize) -> Elem {
        match self.level_kind() {
            LevelKind::Galois(g) => Elem::Gf((next() % g.size() as u64) as u32),
            LevelKind::Quotient(base, m) => {
                let r: Poly = (0..m.len() - 1)
                    .map(|_| base.random_element(next, bound))
                    .collect();
                Elem::Res(poly::trim(base, r))
            }
            LevelKind::RatFun(base) => {
                let dn = (next() % (bound as u64 + 1)) as usize;
                let dd = (next() % (bound as u64 + 1)) as usize;
                let num: Poly = (0..=dn).map(|_| base.random_element(next, bound)).collect();
                let mut den: Poly = (0..=dd).map(|_| base.random_element(next, bound)).collect();
                den = poly::trim(base, den);
                if den.is_empty() {
                    den = vec![base.one()];
                }
                self.fraction(num, den).expect("nonzero den")
            }
        }
    }

    /// A random nonzero element.
    pub fn random_nonzero(&self, next: &mut dyn FnMut() -> u64, bound: usize) -> Elem {
        loop {
            let x = self.random_element(next, bound);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

fn tuples(coeffs: &[Elem], len: usize) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * coeffs.len());
        // Higher coefficients vary slowest so that low-degree residues come first.
        for c in coeffs {
            for t in &out {
                let mut v = t.clone();
                v.push(c.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// All polynomials of degree at most `bound` with coefficients from `coeffs`,
/// ordered by degree, zero first.
fn polys_up_to(base: &Field, coeffs: &[Elem], bound: usize) -> Vec<Poly> {
    let nonzero: Vec<Elem> = coeffs.iter().filter(|c| !base.is_zero(c)).cloned().collect();
    let mut out: Vec<Poly> = vec![Vec::new()];
    for d in 0..=bound {
        for lead in &nonzero {
            for low in tuples(coeffs, d) {
                let mut p = low;
                p.push(lead.clone());
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    #[test]
    fn finite_counts() {
        let f4 = Field::galois(2, 2, None).unwrap();
        assert_eq!(f4.elements(0).len(), 4);
        let f9 = Field::galois(3, 2, None).unwrap();
        let mut e = f9.elements(3);
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 9);
    }

    #[test]
    fn f2t_height_one() {
        let f = Field::gf(2).unwrap().rational_function("t").unwrap();
        let els: Vec<String> = f.elements(1).iter().map(|x| f.format(x)).collect();
        assert_eq!(els.len(), 8);
        for s in ["0", "1", "t", "t + 1", "(1)/(t)", "(1)/(t + 1)", "(t)/(t + 1)", "(t + 1)/(t)"] {
            assert!(els.iter().any(|e| e == s), "{s} missing from {els:?}");
        }
    }

    #[test]
    fn search_scalars_are_polynomials() {
        let f = Field::gf(2).unwrap().rational_function("t").unwrap();
        assert_eq!(f.search_scalars(2).len(), 8);
    }
}
