//! Exact arithmetic in towers of fields.
//!
//! A tower starts at a Galois field `GF(p^k)` and is extended one step at a
//! time, either by a transcendental variable (`F(t)`) or by a quotient
//! `F[x]/(m)` for a monic modulus the caller asserts to be irreducible.
//!
//! Elements do not carry a pointer to their field: every operation goes
//! through a [`Field`] handle, which is cheap to clone and shareable across
//! threads. Elements are always canonical, so structural equality is field
//! equality.

mod decide;
mod enumerate;
pub mod galois;
pub mod poly;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use decide::{NonMemberReason, NonSquareReason, SquareClass, SquareDecision, WpDecision};
use galois::GaloisField;
use poly::Poly;

use crate::error::{Error, Result};

/// A field element in canonical form.
///
/// The variant is determined by the top level of the owning field:
/// Galois fields use packed digits, rational function levels a reduced
/// fraction with monic denominator, quotient levels a residue polynomial of
/// degree below the modulus degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Gf(u32),
    Frac(Box<Frac>),
    Res(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac {
    pub num: Poly,
    pub den: Poly,
}

/// One extension step in a field tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerStep {
    Transcendental(String),
    /// Monic modulus over the previous level, constant term first.
    Quotient { modulus: Vec<Elem>, var: String },
}

#[derive(Debug)]
enum Level {
    Galois(GaloisField),
    RatFun {
        base: Field,
        var: String,
    },
    Quotient {
        base: Field,
        modulus: Poly,
        var: String,
        /// Irreducibility was proven at construction; otherwise it is only
        /// detected when an inversion fails.
        verified: bool,
    },
}

/// Handle to one level of a field tower.
#[derive(Clone)]
pub struct Field(Arc<Level>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Level::Galois(a), Level::Galois(b)) => {
                a.p() == b.p() && a.k() == b.k() && a.modulus() == b.modulus()
            }
            (Level::RatFun { base: a, var: x }, Level::RatFun { base: b, var: y }) => {
                x == y && a == b
            }
            (
                Level::Quotient {
                    base: a,
                    modulus: m,
                    var: x,
                    ..
                },
                Level::Quotient {
                    base: b,
                    modulus: n,
                    var: y,
                    ..
                },
            ) => x == y && m == n && a == b,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Level::Galois(g) if g.k() == 1 => write!(f, "GF({})", g.p()),
            Level::Galois(g) => write!(f, "GF({}^{})", g.p(), g.k()),
            Level::RatFun { base, var } => write!(f, "{base}({var})"),
            Level::Quotient {
                base, modulus, var, ..
            } => {
                write!(f, "{base}[{var}]/({})", base.format_poly(modulus, var))
            }
        }
    }
}

impl Field {
    /// `GF(p^k)`, optionally with an explicit monic modulus over `GF(p)`.
    pub fn galois(p: u64, k: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        Ok(Field(Arc::new(Level::Galois(GaloisField::new(
            p, k, modulus,
        )?))))
    }

    pub fn gf(q_prime: u64) -> Result<Field> {
        Self::galois(q_prime, 1, None)
    }

    /// Builds a tower from a Galois base and a list of steps.
    pub fn tower(p: u64, k: u32, modulus: Option<Vec<u64>>, steps: &[TowerStep]) -> Result<Field> {
        let mut f = Self::galois(p, k, modulus)?;
        for step in steps {
            f = match step {
                TowerStep::Transcendental(v) => f.rational_function(v)?,
                TowerStep::Quotient { modulus, var } => f.quotient(modulus.clone(), var)?,
            };
        }
        Ok(f)
    }

    fn variable_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match &*cur.0 {
                Level::Galois(_) => break,
                Level::RatFun { base, var } | Level::Quotient { base, var, .. } => {
                    out.push(var.as_str());
                    cur = base;
                }
            }
        }
        out
    }

    fn check_fresh(&self, var: &str) -> Result<()> {
        if var.is_empty() || self.variable_names().contains(&var) {
            return Err(Error::DuplicateVariable(var.to_string()));
        }
        Ok(())
    }

    /// The rational function field `self(var)`.
    pub fn rational_function(&self, var: &str) -> Result<Field> {
        self.check_fresh(var)?;
        if !self.all_inverses_safe() {
            return Err(Error::pre(
                "rational_function",
                "the base contains a quotient step whose irreducibility is unproven",
            ));
        }
        Ok(Field(Arc::new(Level::RatFun {
            base: self.clone(),
            var: var.to_string(),
        })))
    }

    /// The quotient `self[var]/(modulus)`.
    ///
    /// The modulus is trusted to be irreducible unless a decision procedure
    /// proves it reducible here; later failures surface as
    /// [`Error::ModulusReducible`] at the first failed inversion.
    pub fn quotient(&self, modulus: Vec<Elem>, var: &str) -> Result<Field> {
        self.check_fresh(var)?;
        let modulus = poly::trim(self, modulus);
        let d = poly::deg(&modulus).unwrap_or(0);
        if d < 2 {
            return Err(Error::ModulusDegree { degree: d, min: 2 });
        }
        if !self.is_one(&modulus[d]) {
            return Err(Error::NotMonic);
        }
        let verified = match decide::modulus_irreducible(self, &modulus)? {
            Some(true) => true,
            Some(false) => return Err(Error::ModulusReducible),
            None => false,
        };
        Ok(Field(Arc::new(Level::Quotient {
            base: self.clone(),
            modulus,
            var: var.to_string(),
            verified,
        })))
    }

    fn all_inverses_safe(&self) -> bool {
        match &*self.0 {
            Level::Galois(_) => true,
            Level::RatFun { base, .. } => base.all_inverses_safe(),
            Level::Quotient { base, verified, .. } => *verified && base.all_inverses_safe(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Level::Galois(g) => g.p() as u64,
            Level::RatFun { base, .. } | Level::Quotient { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, when finite and representable.
    pub fn size(&self) -> Option<u128> {
        match &*self.0 {
            Level::Galois(g) => Some(g.size() as u128),
            Level::RatFun { .. } => None,
            Level::Quotient { base, modulus, .. } => {
                base.size()?.checked_pow(modulus.len() as u32 - 1)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// The previous level of the tower.
    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            Level::Galois(_) => None,
            Level::RatFun { base, .. } | Level::Quotient { base, .. } => Some(base),
        }
    }

    /// The bottom Galois field of the tower.
    pub fn prime_level(&self) -> &Field {
        match self.base() {
            None => self,
            Some(b) => b.prime_level(),
        }
    }

    pub fn galois_level(&self) -> Option<&GaloisField> {
        match &*self.0 {
            Level::Galois(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_rational_function(&self) -> bool {
        matches!(&*self.0, Level::RatFun { .. })
    }

    pub fn quotient_modulus(&self) -> Option<&[Elem]> {
        match &*self.0 {
            Level::Quotient { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn variable(&self) -> Option<&str> {
        match &*self.0 {
            Level::Galois(_) => None,
            Level::RatFun { var, .. } | Level::Quotient { var, .. } => Some(var),
        }
    }

    /// The steps above the Galois base, bottom first.
    pub fn steps(&self) -> Vec<TowerStep> {
        let mut out = match self.base() {
            None => Vec::new(),
            Some(b) => b.steps(),
        };
        match &*self.0 {
            Level::Galois(_) => {}
            Level::RatFun { var, .. } => out.push(TowerStep::Transcendental(var.clone())),
            Level::Quotient { modulus, var, .. } => out.push(TowerStep::Quotient {
                modulus: modulus.clone(),
                var: var.clone(),
            }),
        }
        out
    }

    /// Number of steps above the Galois base.
    pub fn height(&self) -> usize {
        match self.base() {
            None => 0,
            Some(b) => 1 + b.height(),
        }
    }

    /// True when `self` is a level of `other`'s tower (including equality).
    pub fn is_subfield_of(&self, other: &Field) -> bool {
        let mut cur = Some(other);
        while let Some(f) = cur {
            if f == self {
                return true;
            }
            cur = f.base();
        }
        false
    }

    /// Maps an element of a lower level of the tower into this level.
    pub fn embed(&self, from: &Field, x: &Elem) -> Result<Elem> {
        if self == from {
            return Ok(x.clone());
        }
        let base = self.base().ok_or(Error::NotAnExtension)?;
        let y = base.embed(from, x)?;
        Ok(self.lift(&y))
    }

    /// The image of an element of the previous level.
    pub fn lift(&self, x: &Elem) -> Elem {
        match &*self.0 {
            Level::Galois(_) => x.clone(),
            Level::RatFun { base, .. } => {
                if base.is_zero(x) {
                    self.zero()
                } else {
                    Elem::Frac(Box::new(Frac {
                        num: vec![x.clone()],
                        den: vec![base.one()],
                    }))
                }
            }
            Level::Quotient { base, .. } => Elem::Res(poly::constant(base, x.clone())),
        }
    }

    /// The adjoined variable of the top level (`t` or the residue of `x`).
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            Level::Galois(_) => None,
            Level::RatFun { base, .. } => Some(Elem::Frac(Box::new(Frac {
                num: vec![base.zero(), base.one()],
                den: vec![base.one()],
            }))),
            Level::Quotient { base, modulus, .. } => {
                let x = vec![base.zero(), base.one()];
                Some(Elem::Res(poly::rem_monic(base, &x, modulus)))
            }
        }
    }

    /// The generator of the Galois base's multiplicative structure, i.e. the
    /// class of `x` in `GF(p)[x]/(m)`; `None` for prime fields.
    pub fn galois_generator(&self) -> Option<Elem> {
        let g = self.prime_level().galois_level().unwrap();
        if g.k() == 1 {
            return None;
        }
        let z = Elem::Gf(g.p());
        self.embed(self.prime_level(), &z).ok()
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            Level::Galois(_) => Elem::Gf(0),
            Level::RatFun { base, .. } => Elem::Frac(Box::new(Frac {
                num: Vec::new(),
                den: vec![base.one()],
            })),
            Level::Quotient { .. } => Elem::Res(Vec::new()),
        }
    }

    pub fn one(&self) -> Elem {
        match &*self.0 {
            Level::Galois(_) => Elem::Gf(1),
            Level::RatFun { base, .. } => Elem::Frac(Box::new(Frac {
                num: vec![base.one()],
                den: vec![base.one()],
            })),
            Level::Quotient { base, .. } => Elem::Res(vec![base.one()]),
        }
    }

    #[inline]
    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Gf(v) => *v == 0,
            Elem::Frac(fr) => fr.num.is_empty(),
            Elem::Res(r) => r.is_empty(),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn from_int(&self, n: i64) -> Elem {
        match &*self.0 {
            Level::Galois(g) => Elem::Gf(g.from_int(n)),
            Level::RatFun { base, .. } | Level::Quotient { base, .. } => {
                self.lift(&base.from_int(n))
            }
        }
    }

    #[inline]
    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Level::Galois(g), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(g.add(*x, *y)),
            (Level::RatFun { base, .. }, Elem::Frac(x), Elem::Frac(y)) => {
                if self.is_zero(a) {
                    return b.clone();
                }
                if self.is_zero(b) {
                    return a.clone();
                }
                if x.den == y.den {
                    let num = poly::add(base, &x.num, &y.num);
                    return frac_or_panic(base, num, x.den.clone());
                }
                let num = poly::add(
                    base,
                    &poly::mul(base, &x.num, &y.den),
                    &poly::mul(base, &y.num, &x.den),
                );
                frac_or_panic(base, num, poly::mul(base, &x.den, &y.den))
            }
            (Level::Quotient { base, .. }, Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(poly::add(base, x, y))
            }
            _ => foreign(self, a),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (Level::Galois(g), Elem::Gf(x)) => Elem::Gf(g.neg(*x)),
            (Level::RatFun { base, .. }, Elem::Frac(x)) => Elem::Frac(Box::new(Frac {
                num: poly::neg(base, &x.num),
                den: x.den.clone(),
            })),
            (Level::Quotient { base, .. }, Elem::Res(x)) => Elem::Res(poly::neg(base, x)),
            _ => foreign(self, a),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        if let (Level::Galois(g), Elem::Gf(x), Elem::Gf(y)) = (&*self.0, a, b) {
            return Elem::Gf(g.add(*x, g.neg(*y)));
        }
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Level::Galois(g), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(g.mul(*x, *y)),
            (Level::RatFun { base, .. }, Elem::Frac(x), Elem::Frac(y)) => {
                if self.is_zero(a) || self.is_zero(b) {
                    return self.zero();
                }
                // Cross-cancel before multiplying to keep degrees small.
                let g1 = poly::gcd(base, &x.num, &y.den).expect(SAFE);
                let g2 = poly::gcd(base, &y.num, &x.den).expect(SAFE);
                let n1 = exact_div(base, &x.num, &g1);
                let d2 = exact_div(base, &y.den, &g1);
                let n2 = exact_div(base, &y.num, &g2);
                let d1 = exact_div(base, &x.den, &g2);
                let num = poly::mul(base, &n1, &n2);
                let den = poly::mul(base, &d1, &d2);
                let lc = den.last().unwrap().clone();
                if base.is_one(&lc) {
                    Elem::Frac(Box::new(Frac { num, den }))
                } else {
                    let inv = base.inv(&lc).expect(SAFE);
                    Elem::Frac(Box::new(Frac {
                        num: poly::scale(base, &num, &inv),
                        den: poly::scale(base, &den, &inv),
                    }))
                }
            }
            (Level::Quotient { base, modulus, .. }, Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(poly::rem_monic(base, &poly::mul(base, x, y), modulus))
            }
            _ => foreign(self, a),
        }
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    /// Multiplicative inverse. Fails on zero and on non-invertible residues
    /// of a quotient level whose modulus turns out to be reducible.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (&*self.0, a) {
            (Level::Galois(g), Elem::Gf(x)) => Ok(Elem::Gf(g.inv(*x).unwrap())),
            (Level::RatFun { base, .. }, Elem::Frac(x)) => {
                normalize_frac(base, x.den.clone(), x.num.clone())
            }
            (Level::Quotient { base, modulus, .. }, Elem::Res(x)) => {
                let (g, s, _) = poly::xgcd(base, x, modulus).map_err(|e| match e {
                    Error::DivisionByZero => Error::ModulusReducible,
                    e => e,
                })?;
                if g.len() != 1 {
                    return Err(Error::ModulusReducible);
                }
                Ok(Elem::Res(poly::rem_monic(base, &s, modulus)))
            }
            _ => foreign(self, a),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        if let (Level::Galois(g), Elem::Gf(x)) = (&*self.0, a) {
            return Elem::Gf(g.pow(*x, e));
        }
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u128))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs() as u128))
        }
    }

    /// Re-canonicalizes an element, e.g. one assembled from raw parts.
    pub fn canonicalize(&self, x: &Elem) -> Result<Elem> {
        match (&*self.0, x) {
            (Level::Galois(g), Elem::Gf(v)) => {
                if *v >= g.size() {
                    Err(Error::pre("canonicalize", "packed value out of range"))
                } else {
                    Ok(x.clone())
                }
            }
            (Level::RatFun { base, .. }, Elem::Frac(fr)) => {
                let num = fr
                    .num
                    .iter()
                    .map(|c| base.canonicalize(c))
                    .collect::<Result<Vec<_>>>()?;
                let den = fr
                    .den
                    .iter()
                    .map(|c| base.canonicalize(c))
                    .collect::<Result<Vec<_>>>()?;
                normalize_frac(base, num, den)
            }
            (Level::Quotient { base, modulus, .. }, Elem::Res(r)) => {
                let r = r
                    .iter()
                    .map(|c| base.canonicalize(c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Elem::Res(poly::rem_monic(
                    base,
                    &poly::trim(base, r),
                    modulus,
                )))
            }
            _ => Err(Error::pre("canonicalize", "element shape does not match the field level")),
        }
    }

    /// Builds `num/den` at a rational function level.
    pub fn fraction(&self, num: Poly, den: Poly) -> Result<Elem> {
        match &*self.0 {
            Level::RatFun { base, .. } => {
                normalize_frac(base, poly::trim(base, num), poly::trim(base, den))
            }
            _ => Err(Error::pre("fraction", "not a rational function level")),
        }
    }

    /// Builds the residue of a polynomial at a quotient level.
    pub fn residue(&self, r: Poly) -> Result<Elem> {
        match &*self.0 {
            Level::Quotient { base, modulus, .. } => Ok(Elem::Res(poly::rem_monic(
                base,
                &poly::trim(base, r),
                modulus,
            ))),
            _ => Err(Error::pre("residue", "not a quotient level")),
        }
    }

    pub fn sum<'a>(&self, it: impl IntoIterator<Item = &'a Elem>) -> Elem {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Human readable rendering.
    pub fn format(&self, x: &Elem) -> String {
        match (&*self.0, x) {
            (Level::Galois(g), Elem::Gf(v)) => {
                if g.k() == 1 {
                    format!("{v}")
                } else {
                    let digits: Vec<Elem> = g.digits(*v).into_iter().map(Elem::Gf).collect();
                    let prime = Field::galois(g.p() as u64, 1, None).expect("prime field");
                    prime.format_poly(&poly::trim(&prime, digits), "z")
                }
            }
            (Level::RatFun { base, var }, Elem::Frac(fr)) => {
                let num = base.format_poly(&fr.num, var);
                if fr.den.len() == 1 {
                    num
                } else {
                    format!("({num})/({})", base.format_poly(&fr.den, var))
                }
            }
            (Level::Quotient { base, var, .. }, Elem::Res(r)) => base.format_poly(r, var),
            _ => format!("{x:?}"),
        }
    }

    /// Renders a polynomial over this field in the variable `var`.
    pub fn format_poly(&self, p: &[Elem], var: &str) -> String {
        if p.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in p.iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let coeff = self.format(c);
            let atomic = !coeff.contains(['+', '-', '/', ' ']);
            let coeff = if atomic { coeff } else { format!("({coeff})") };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(match (i, self.is_one(c)) {
                (0, _) => coeff,
                (_, true) => mono,
                _ => format!("{coeff}*{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub(crate) fn level_kind(&self) -> LevelKind<'_> {
        match &*self.0 {
            Level::Galois(g) => LevelKind::Galois(g),
            Level::RatFun { base, .. } => LevelKind::RatFun(base),
            Level::Quotient { base, modulus, .. } => LevelKind::Quotient(base, modulus),
        }
    }
}

pub(crate) enum LevelKind<'a> {
    Galois(&'a GaloisField),
    RatFun(&'a Field),
    Quotient(&'a Field, &'a [Elem]),
}

const SAFE: &str = "rational function levels sit only above proven fields";

#[cold]
fn foreign(f: &Field, x: &Elem) -> ! {
    panic!("element {x:?} does not belong to {f}")
}

fn exact_div(base: &Field, a: &[Elem], g: &[Elem]) -> Poly {
    if g.len() == 1 {
        return a.to_vec();
    }
    poly::divrem(base, a, g).expect(SAFE).0
}

fn frac_or_panic(base: &Field, num: Poly, den: Poly) -> Elem {
    normalize_frac(base, num, den).expect(SAFE)
}

fn normalize_frac(base: &Field, num: Poly, den: Poly) -> Result<Elem> {
    if den.is_empty() {
        return Err(Error::DivisionByZero);
    }
    if num.is_empty() {
        return Ok(Elem::Frac(Box::new(Frac {
            num,
            den: vec![base.one()],
        })));
    }
    let (num, den) = if den.len() == 1 {
        (num, den)
    } else {
        let g = poly::gcd(base, &num, &den)?;
        if g.len() > 1 {
            (
                poly::divrem(base, &num, &g)?.0,
                poly::divrem(base, &den, &g)?.0,
            )
        } else {
            (num, den)
        }
    };
    let lc = den.last().unwrap();
    if base.is_one(lc) {
        return Ok(Elem::Frac(Box::new(Frac { num, den })));
    }
    let inv = base.inv(lc)?;
    Ok(Elem::Frac(Box::new(Frac {
        num: poly::scale(base, &num, &inv),
        den: poly::scale(base, &den, &inv),
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2t() -> Field {
        Field::gf(2).unwrap().rational_function("t").unwrap()
    }

    #[test]
    fn gf2_basics() {
        let f = Field::gf(2).unwrap();
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.size(), Some(2));
        assert_eq!(f.add(&f.one(), &f.one()), f.zero());
    }

    #[test]
    fn rational_functions_reduce() {
        let f = f2t();
        let t = f.generator().unwrap();
        let one = f.one();
        let t1 = f.add(&t, &one);
        // t(t+1)/(t+1) = t
        let x = f.div(&f.mul(&t, &t1), &t1).unwrap();
        assert_eq!(x, t);
        assert_eq!(f.format(&f.inv(&t1).unwrap()), "(1)/(t + 1)");
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.size(), None);
    }

    #[test]
    fn artin_schreier_quotient() {
        let f = f2t();
        let t = f.generator().unwrap();
        let k = f
            .quotient(vec![t.clone(), f.one(), f.one()], "x")
            .unwrap();
        let x = k.generator().unwrap();
        // x^2 + x = t
        let lhs = k.add(&k.square(&x), &x);
        assert_eq!(lhs, k.lift(&t));
        let xi = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &xi), k.one());
    }

    #[test]
    fn reducible_quotient_is_rejected_when_decidable() {
        let f = Field::gf(2).unwrap();
        // x^2 + x = x(x + 1)
        let m = vec![f.zero(), f.one(), f.one()];
        assert_eq!(f.quotient(m, "x").unwrap_err(), Error::ModulusReducible);
        let g = f2t();
        let t = g.generator().unwrap();
        // x^2 + t^2 = (x + t)^2
        let m = vec![g.square(&t), g.zero(), g.one()];
        assert_eq!(g.quotient(m, "x").unwrap_err(), Error::ModulusReducible);
    }

    #[test]
    fn duplicate_variables_rejected() {
        let f = f2t();
        assert_eq!(
            f.rational_function("t").unwrap_err(),
            Error::DuplicateVariable("t".into())
        );
    }

    #[test]
    fn embedding_through_the_tower() {
        let f2 = Field::gf(2).unwrap();
        let ft = f2.rational_function("t").unwrap();
        let fts = ft.rational_function("s").unwrap();
        let t = ft.generator().unwrap();
        let t_up = fts.embed(&ft, &t).unwrap();
        assert_eq!(fts.format(&t_up), "t");
        assert!(ft.is_subfield_of(&fts));
        assert!(!fts.is_subfield_of(&ft));
        assert_eq!(ft.embed(&fts, &t_up), Err(Error::NotAnExtension));
    }
}
