//! Linear combinations of elementary tensors over a presented algebra.
//!
//! A `Tensor` has a fixed number of legs; each pure term is a scalar times a
//! tuple of words, one per leg. Canonical form keeps every leg word in normal
//! form, so equality of tensors is literal equality of the term maps.

use crate::ncalg::{NcError, NCPoly, Presentation, Word};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub legs: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl Tensor {
    pub fn zero(legs: usize) -> Tensor {
        Tensor {
            legs,
            terms: BTreeMap::new(),
        }
    }

    /// 1 (x) 1 (x) ... (x) 1
    pub fn unit(legs: usize) -> Tensor {
        Tensor::term(Scalar::one(), vec![Word::one(); legs])
    }

    pub fn term(c: Scalar, words: Vec<Word>) -> Tensor {
        let mut t = Tensor::zero(words.len());
        t.add_term(c, words);
        t
    }

    pub fn from_terms(legs: usize, terms: Vec<(Scalar, Vec<Word>)>) -> Tensor {
        let mut t = Tensor::zero(legs);
        for (c, ws) in terms {
            assert_eq!(ws.len(), legs, "leg count mismatch");
            t.add_term(c, ws);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, c: Scalar, words: Vec<Word>) {
        debug_assert_eq!(words.len(), self.legs);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(words) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.legs, other.legs);
        let mut out = self.clone();
        for (ws, c) in &other.terms {
            out.add_term(c.clone(), ws.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            legs: self.legs,
            terms: self
                .terms
                .iter()
                .map(|(ws, c)| (ws.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.legs);
        for (ws, k) in &self.terms {
            out.add_term(k.mul(c), ws.clone());
        }
        out
    }

    /// Put every leg word in normal form and re-expand.
    pub fn normalize(&self, p: &Presentation) -> Result<Tensor, NcError> {
        let mut out = Tensor::zero(self.legs);
        for (ws, c) in &self.terms {
            let mut expanded: Vec<(Scalar, Vec<Word>)> = vec![(c.clone(), Vec::new())];
            for w in ws {
                let nf = p.normal_form(&NCPoly::from_word(w.clone()))?;
                let mut next = Vec::new();
                for (c0, acc) in &expanded {
                    for (w2, c2) in nf.terms() {
                        let mut acc2 = acc.clone();
                        acc2.push(w2.clone());
                        next.push((c0.mul(c2), acc2));
                    }
                }
                expanded = next;
            }
            for (c2, ws2) in expanded {
                out.add_term(c2, ws2);
            }
        }
        Ok(out)
    }

    /// Replace leg `i` by the image of its word under `f`; the image may have
    /// any (fixed) number of legs, including zero (a pure scalar).
    pub fn map_leg<E>(
        &self,
        i: usize,
        out_legs: usize,
        mut f: impl FnMut(&Word) -> Result<Tensor, E>,
    ) -> Result<Tensor, E> {
        let mut out = Tensor::zero(self.legs - 1 + out_legs);
        for (ws, c) in &self.terms {
            let image = f(&ws[i])?;
            debug_assert_eq!(image.legs, out_legs);
            for (iws, ic) in &image.terms {
                let mut nws = Vec::with_capacity(out.legs);
                nws.extend_from_slice(&ws[..i]);
                nws.extend_from_slice(iws);
                nws.extend_from_slice(&ws[i + 1..]);
                out.add_term(c.mul(ic), nws);
            }
        }
        Ok(out)
    }

    /// Replace the adjacent pair of legs (i, i+1) by the image of the pair.
    pub fn map_leg_pair<E>(
        &self,
        i: usize,
        out_legs: usize,
        mut f: impl FnMut(&Word, &Word) -> Result<Tensor, E>,
    ) -> Result<Tensor, E> {
        let mut out = Tensor::zero(self.legs - 2 + out_legs);
        for (ws, c) in &self.terms {
            let image = f(&ws[i], &ws[i + 1])?;
            debug_assert_eq!(image.legs, out_legs);
            for (iws, ic) in &image.terms {
                let mut nws = Vec::with_capacity(out.legs);
                nws.extend_from_slice(&ws[..i]);
                nws.extend_from_slice(iws);
                nws.extend_from_slice(&ws[i + 2..]);
                out.add_term(c.mul(ic), nws);
            }
        }
        Ok(out)
    }

    /// Concatenate legs i and i+1 (free multiplication; normalize after).
    pub fn mul_legs(&self, i: usize) -> Tensor {
        let mut out = Tensor::zero(self.legs - 1);
        for (ws, c) in &self.terms {
            let mut nws = Vec::with_capacity(out.legs);
            nws.extend_from_slice(&ws[..i]);
            nws.push(ws[i].concat(&ws[i + 1]));
            nws.extend_from_slice(&ws[i + 2..]);
            out.add_term(c.clone(), nws);
        }
        out
    }

    /// Swap legs i and i+1.
    pub fn flip_legs(&self, i: usize) -> Tensor {
        let mut out = Tensor::zero(self.legs);
        for (ws, c) in &self.terms {
            let mut nws = ws.clone();
            nws.swap(i, i + 1);
            out.add_term(c.clone(), nws);
        }
        out
    }

    /// Reverse all legs.
    pub fn reverse_legs(&self) -> Tensor {
        let mut out = Tensor::zero(self.legs);
        for (ws, c) in &self.terms {
            let mut nws = ws.clone();
            nws.reverse();
            out.add_term(c.clone(), nws);
        }
        out
    }

    /// A one-leg tensor collapses to an NCPoly.
    pub fn into_poly(&self) -> NCPoly {
        assert_eq!(self.legs, 1);
        let mut p = NCPoly::zero();
        for (ws, c) in &self.terms {
            p.add_term(ws[0].clone(), c.clone());
        }
        p
    }

    /// Lift an NCPoly into a one-leg tensor.
    pub fn from_poly(p: &NCPoly) -> Tensor {
        let mut t = Tensor::zero(1);
        for (w, c) in p.terms() {
            t.add_term(c.clone(), vec![w.clone()]);
        }
        t
    }

    /// Tensor product: legs of `self` followed by legs of `other`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.legs + other.legs);
        for (ws1, c1) in &self.terms {
            for (ws2, c2) in &other.terms {
                let mut nws = ws1.clone();
                nws.extend_from_slice(ws2);
                out.add_term(c1.mul(c2), nws);
            }
        }
        out
    }

    pub fn format(&self, p: &Presentation) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (ws, c) in &self.terms {
            let cs = format!("{c}");
            let legs = ws
                .iter()
                .map(|w| p.format_word(w))
                .collect::<Vec<_>>()
                .join(" @ ");
            if cs == "1" {
                parts.push(legs);
            } else if c.num_terms() > 1 {
                parts.push(format!("({cs})*{legs}"));
            } else {
                parts.push(format!("{cs}*{legs}"));
            }
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{builtin, Builtin};
    use crate::text::{parse_ncpoly, parse_tensor};

    fn t2(s: &str, p: &Presentation) -> Tensor {
        Tensor::from_terms(2, parse_tensor(s, p, 2).unwrap())
    }

    #[test]
    fn normalize_reduces_each_leg() {
        let p = builtin(Builtin::AR).unwrap();
        let t = t2("b*a @ a", &p).normalize(&p).unwrap();
        assert_eq!(t, t2("q*a*b @ a", &p));
    }

    #[test]
    fn mul_and_flip() {
        let p = builtin(Builtin::AR).unwrap();
        let t = t2("a @ b", &p);
        assert_eq!(
            t.mul_legs(0).into_poly(),
            parse_ncpoly("a*b", &p).unwrap()
        );
        assert_eq!(t.flip_legs(0), t2("b @ a", &p));
    }

    #[test]
    fn outer_and_linearity() {
        let p = builtin(Builtin::AR).unwrap();
        let x = t2("a @ b + c @ d", &p);
        let y = Tensor::from_poly(&parse_ncpoly("a - d", &p).unwrap());
        let o = x.outer(&y);
        assert_eq!(o.legs, 3);
        assert_eq!(o.num_terms(), 4);
        let z = x.sub(&x);
        assert!(z.is_zero());
    }
}
