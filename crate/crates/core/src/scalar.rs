//! Exact arithmetic for the commutative coefficient ring: Laurent polynomials
//! in the deformation parameters `q`, `r` with rational coefficients, extended
//! by ordinary (nonnegative-exponent) polynomial unknowns.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// What a symbol is allowed to do: Laurent parameters may carry negative
/// exponents, unknowns may not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    LaurentParam,
    Unknown,
}

/// A named indeterminate of the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
}

impl Symbol {
    pub fn q() -> Symbol {
        Symbol { name: "q".into(), kind: SymbolKind::LaurentParam }
    }

    pub fn r() -> Symbol {
        Symbol { name: "r".into(), kind: SymbolKind::LaurentParam }
    }

    pub fn unknown(name: &str) -> Symbol {
        Symbol { name: name.into(), kind: SymbolKind::Unknown }
    }

    /// Default classification used by the parser: `q` and `r` are Laurent
    /// parameters, everything else is an unknown.
    pub fn named(name: &str) -> Symbol {
        match name {
            "q" => Symbol::q(),
            "r" => Symbol::r(),
            _ => Symbol::unknown(name),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Exponent vector: map symbol -> nonzero integer exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub BTreeMap<Symbol, i64>);

impl Mono {
    pub fn one() -> Mono {
        Mono(BTreeMap::new())
    }

    pub fn var(s: Symbol, e: i64) -> Mono {
        let mut m = BTreeMap::new();
        if e != 0 {
            m.insert(s, e);
        }
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            let entry = m.entry(s.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                m.remove(s);
            }
        }
        Mono(m)
    }

    pub fn inv(&self) -> Mono {
        Mono(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect())
    }

    pub fn contains_unknown(&self) -> bool {
        self.0.keys().any(|s| s.kind == SymbolKind::Unknown)
    }

    /// Exact monomial division: `self / other`, failing when an unknown would
    /// pick up a negative exponent.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let m = self.mul(&other.inv());
        if m.0
            .iter()
            .any(|(s, e)| s.kind == SymbolKind::Unknown && *e < 0)
        {
            None
        } else {
            Some(m)
        }
    }

    pub fn degree_in(&self, s: &Symbol) -> i64 {
        self.0.get(s).copied().unwrap_or(0)
    }
}

// Graded lexicographic: total degree first, lexicographic on the exponent
// vectors as a tiebreak. Gives every Scalar a unique sorted representation.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let a: Vec<_> = self.0.iter().collect();
                let b: Vec<_> = other.0.iter().collect();
                a.cmp(&b)
            })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot substitute a non-unit for Laurent parameter {0}")]
    NonUnitBinding(String),
    #[error("division by non-unit scalar")]
    DivideByNonUnit,
    #[error("negative power of non-unit scalar")]
    NegativePower,
}

/// Canonical multivariate (Laurent) polynomial: sorted terms, no zeros stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Mono, BigRational>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Scalar { terms }
    }

    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The monomial `s^e` with coefficient 1.
    pub fn var_pow(s: Symbol, e: i64) -> Scalar {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(s, e), BigRational::one());
        Scalar { terms }
    }

    pub fn var(s: Symbol) -> Scalar {
        Scalar::var_pow(s, 1)
    }

    pub fn q_pow(e: i64) -> Scalar {
        Scalar::var_pow(Symbol::q(), e)
    }

    pub fn term(c: BigRational, m: Mono) -> Scalar {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest monomial under the graded-lex order, with its coefficient.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Scalar { terms }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_term(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Scalar { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// True iff a single term whose monomial involves no unknowns: exactly the
    /// invertible elements of the coefficient ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && {
            let (m, _) = self.terms.iter().next().unwrap();
            !m.contains_unknown()
        }
    }

    pub fn unit_inverse(&self) -> Result<Scalar, ScalarError> {
        if !self.is_unit() {
            return Err(ScalarError::DivideByNonUnit);
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Ok(Scalar::term(c.recip(), m.inv()))
    }

    pub fn divide_by_unit(&self, u: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&u.unit_inverse()?))
    }

    /// Exact polynomial division; `None` when `self` is not a multiple of
    /// `other`. Division by units always succeeds.
    pub fn try_divide(&self, other: &Scalar) -> Option<Scalar> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        // shift both operands to nonnegative exponents so leading-term
        // division terminates (Laurent monomials are not well ordered)
        let (ms, ps) = self.shift_nonneg();
        let (mo, po) = other.shift_nonneg();
        let (lm, lc) = po.leading().unwrap();
        let mut rem = ps;
        let mut quot_terms = BTreeMap::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.try_div(lm)?;
            if qm.0.values().any(|e| *e < 0) {
                return None;
            }
            let qc = rc / lc;
            add_term(&mut quot_terms, qm.clone(), qc.clone());
            let piece = po.mul(&Scalar::term(qc, qm));
            rem = rem.sub(&piece);
        }
        let q = Scalar { terms: quot_terms };
        Some(q.mul(&Scalar::term(num::BigRational::from_integer(1.into()), ms.mul(&mo.inv()))))
    }

    /// Factor out the per-symbol minimum exponent so every exponent in the
    /// returned polynomial is nonnegative: `self = factor * shifted`.
    fn shift_nonneg(&self) -> (Mono, Scalar) {
        let symbols: std::collections::BTreeSet<Symbol> =
            self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        let mut mins: BTreeMap<Symbol, i64> = BTreeMap::new();
        for s in symbols {
            // a term missing the symbol carries exponent 0
            let min = self
                .terms
                .keys()
                .map(|m| m.degree_in(&s))
                .min()
                .unwrap_or(0);
            if min != 0 {
                mins.insert(s, min);
            }
        }
        let factor = Mono(mins);
        let inv = factor.inv();
        let shifted = Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&inv), c.clone()))
                .collect(),
        };
        (factor, shifted)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Homomorphic substitution. Bindings for Laurent parameters must be
    /// units (negative powers must stay defined).
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<Scalar, ScalarError> {
        for (s, v) in bindings {
            if s.kind == SymbolKind::LaurentParam && !v.is_unit() {
                return Err(ScalarError::NonUnitBinding(s.name.clone()));
            }
        }
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = Scalar::from_rational(c.clone());
            for (s, e) in &m.0 {
                let factor = match bindings.get(s) {
                    Some(v) => {
                        if *e >= 0 {
                            v.pow(*e as u32)
                        } else {
                            v.unit_inverse()
                                .map_err(|_| ScalarError::NegativePower)?
                                .pow((-e) as u32)
                        }
                    }
                    None => Scalar::var_pow(s.clone(), *e),
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys().flat_map(|m| m.0.keys())
    }

    pub fn contains_symbol(&self, s: &Symbol) -> bool {
        self.terms.keys().any(|m| m.0.contains_key(s))
    }

    /// Degree in one symbol (max exponent over terms; 0 when absent).
    pub fn degree_in(&self, s: &Symbol) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree_in(s))
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `s^e`, as a polynomial in the remaining symbols.
    pub fn coefficient_of(&self, s: &Symbol, e: i64) -> Scalar {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.degree_in(s) == e {
                let mut m2 = m.0.clone();
                m2.remove(s);
                add_term(&mut terms, Mono(m2), c.clone());
            }
        }
        Scalar { terms }
    }

    /// Divide out the rational content and the common monomial factor, and
    /// normalize the sign of the leading coefficient. Used to canonicalize
    /// equations up to units.
    pub fn primitive_part(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        // gcd of numerators over lcm of denominators
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let content = BigRational::new(num_gcd, den_lcm);
        // common monomial factor: componentwise min over exponent vectors,
        // treating absent symbols as exponent 0
        let symbols: std::collections::BTreeSet<Symbol> =
            self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        let mut common: BTreeMap<Symbol, i64> = BTreeMap::new();
        for s in symbols {
            let min_e = self
                .terms
                .keys()
                .map(|m| m.degree_in(&s))
                .min()
                .unwrap_or(0);
            if min_e != 0 {
                common.insert(s, min_e);
            }
        }
        let factor = Scalar::term(content, Mono(common));
        let mut out = self.try_divide(&factor).unwrap_or_else(|| self.clone());
        if let Some((_, c)) = out.leading() {
            if c.is_negative() {
                out = out.neg();
            }
        }
        out
    }

    /// Square root of a single-term scalar, when it exists.
    pub fn monomial_sqrt(&self) -> Option<Scalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.is_negative() {
            return None;
        }
        let num = c.numer().sqrt();
        let den = c.denom().sqrt();
        if &(&num * &num) != c.numer() || &(&den * &den) != c.denom() {
            return None;
        }
        let mut half = BTreeMap::new();
        for (s, e) in &m.0 {
            if e % 2 != 0 {
                return None;
            }
            half.insert(s.clone(), e / 2);
        }
        Some(Scalar::term(BigRational::new(num, den), Mono(half)))
    }
}

fn add_term(terms: &mut BTreeMap<Mono, BigRational>, m: Mono, c: BigRational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // descending monomial order
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for (s, e) in &m.0 {
                if *e == 1 {
                    factors.push(s.name.clone());
                } else {
                    factors.push(format!("{}^{}", s.name, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::var(Symbol::q())
    }

    #[test]
    fn mul_examples() {
        // (1 - q^-2) * q^2 = q^2 - 1
        let x = Scalar::one().sub(&Scalar::q_pow(-2));
        let expect = Scalar::q_pow(2).sub(&Scalar::one());
        assert_eq!(x.mul(&Scalar::q_pow(2)), expect);
        // (q^-1 - q) * (-q) = q^2 - 1
        let y = Scalar::q_pow(-1).sub(&q());
        assert_eq!(y.mul(&q().neg()), expect);
    }

    #[test]
    fn add_matches_first_solution_coefficient_split() {
        // (q^2 - q^-2) + q^-2 = q^2
        let x = Scalar::q_pow(2).sub(&Scalar::q_pow(-2));
        assert_eq!(x.add(&Scalar::q_pow(-2)), Scalar::q_pow(2));
    }

    #[test]
    fn substitute_r_to_q() {
        // (r - r^-1) q^2 at r -> q gives q^3 - q
        let x = Scalar::var(Symbol::r())
            .sub(&Scalar::var_pow(Symbol::r(), -1))
            .mul(&Scalar::q_pow(2));
        let mut b = BTreeMap::new();
        b.insert(Symbol::r(), q());
        let expect = Scalar::q_pow(3).sub(&q());
        assert_eq!(x.substitute(&b).unwrap(), expect);
    }

    #[test]
    fn substitute_classical_limit() {
        let x = Scalar::one().sub(&Scalar::q_pow(-2));
        let mut b = BTreeMap::new();
        b.insert(Symbol::q(), Scalar::one());
        assert_eq!(x.substitute(&b).unwrap(), Scalar::zero());
    }

    #[test]
    fn substitute_unknowns() {
        // A1*q + A2 at A1 -> 1, A2 -> 0 gives q
        let a1 = Symbol::unknown("A1");
        let a2 = Symbol::unknown("A2");
        let x = Scalar::var(a1.clone()).mul(&q()).add(&Scalar::var(a2.clone()));
        let mut b = BTreeMap::new();
        b.insert(a1, Scalar::one());
        b.insert(a2, Scalar::zero());
        assert_eq!(x.substitute(&b).unwrap(), q());
    }

    #[test]
    fn substitute_zero_for_laurent_param_rejected() {
        let x = Scalar::q_pow(-1);
        let mut b = BTreeMap::new();
        b.insert(Symbol::q(), Scalar::zero());
        assert!(x.substitute(&b).is_err());
    }

    #[test]
    fn unit_predicates() {
        assert!(Scalar::q_pow(3).is_unit());
        assert!(!Scalar::q_pow(1).sub(&Scalar::one()).is_unit());
        assert!(!Scalar::zero().is_unit());
        assert!(!Scalar::var(Symbol::unknown("A1")).mul(&q()).is_unit());
        // (q^2 - 1) / q = q - q^-1
        let x = Scalar::q_pow(2).sub(&Scalar::one());
        let expect = q().sub(&Scalar::q_pow(-1));
        assert_eq!(x.divide_by_unit(&q()).unwrap(), expect);
    }

    #[test]
    fn exact_division() {
        // (q^2 - 1)(q^2 + 1) / (q^2 - 1) = q^2 + 1
        let a = Scalar::q_pow(2).sub(&Scalar::one());
        let b = Scalar::q_pow(2).add(&Scalar::one());
        let p = a.mul(&b);
        assert_eq!(p.try_divide(&a), Some(b.clone()));
        assert_eq!(b.try_divide(&a), None);
    }

    #[test]
    fn fresh_unit_roundtrip() {
        let t = Symbol { name: "t".into(), kind: SymbolKind::LaurentParam };
        let x = Scalar::q_pow(-3)
            .add(&Scalar::q_pow(2).mul(&Scalar::from_int(5)))
            .sub(&Scalar::one());
        let mut fwd = BTreeMap::new();
        fwd.insert(Symbol::q(), Scalar::var(t.clone()));
        let mut bwd = BTreeMap::new();
        bwd.insert(t, q());
        assert_eq!(
            x.substitute(&fwd).unwrap().substitute(&bwd).unwrap(),
            x
        );
    }

    #[test]
    fn primitive_part_canonicalizes() {
        // 2q^3 - 2q  ->  q^2 - 1
        let x = Scalar::q_pow(3)
            .scale(&BigRational::from(BigInt::from(2)))
            .sub(&q().scale(&BigRational::from(BigInt::from(2))));
        let expect = Scalar::q_pow(2).sub(&Scalar::one());
        assert_eq!(x.primitive_part(), expect);
        assert_eq!(x.neg().primitive_part(), expect);
    }

    #[test]
    fn monomial_sqrt() {
        let x = Scalar::term(
            BigRational::new(BigInt::from(4), BigInt::from(9)),
            Mono::var(Symbol::q(), -4),
        );
        let s = x.monomial_sqrt().unwrap();
        assert_eq!(s.mul(&s), x);
        assert!(q().add(&Scalar::one()).monomial_sqrt().is_none());
    }
}
