//! The shipped algebra presentations and basis changes between them.
//!
//! `AR` is the quantized coordinate algebra of 2x2 matrices with unit quantum
//! determinant. `BRAbcd` is its covariantized (braided) version on the same
//! letters. `BRAbcp` is the braided algebra rewritten over the generators
//! a, b, c and the central element p = q^-2 a + d. `TQR` is the two-parameter
//! deformation whose r = q slice reproduces the braided multiplication through
//! a product table.

use crate::ncalg::{NcError, NCPoly, Presentation, PresRef};
use crate::scalar::{Scalar, Symbol};
use crate::text::parse_ncpoly;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    AR,
    BRAbcd,
    BRAbcp,
    TQR,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::AR => "ar",
            Builtin::BRAbcd => "br_abcd",
            Builtin::BRAbcp => "br_abcp",
            Builtin::TQR => "tqr",
        }
    }

    pub fn from_name(s: &str) -> Option<Builtin> {
        match s {
            "ar" => Some(Builtin::AR),
            "br_abcd" => Some(Builtin::BRAbcd),
            "br_abcp" => Some(Builtin::BRAbcp),
            "tqr" => Some(Builtin::TQR),
            _ => None,
        }
    }

    pub fn all() -> [Builtin; 4] {
        [Builtin::AR, Builtin::BRAbcd, Builtin::BRAbcp, Builtin::TQR]
    }
}

fn build_from_strings(
    name: &str,
    generators: &[(&str, u32)],
    params: &[Symbol],
    relations: &[(&str, &str)],
    central: &[&str],
) -> Result<Presentation, NcError> {
    // a scratch presentation lets the parser resolve generator names before
    // any rules exist
    let scratch = Presentation {
        name: name.into(),
        generators: generators.iter().map(|(n, _)| n.to_string()).collect(),
        weights: generators.iter().map(|(_, w)| *w).collect(),
        params: params.to_vec(),
        relations: vec![],
        central: vec![],
        rules: vec![],
        completion_added: vec![],
    };
    let rels = relations
        .iter()
        .map(|(l, r)| {
            let lp = parse_ncpoly(l, &scratch)
                .unwrap_or_else(|e| panic!("bad builtin relation `{l}`: {e}"));
            let rp = parse_ncpoly(r, &scratch)
                .unwrap_or_else(|e| panic!("bad builtin relation `{r}`: {e}"));
            (lp, rp)
        })
        .collect();
    let central_ids: Vec<_> = central
        .iter()
        .map(|c| scratch.gen_id(c).expect("central generator exists"))
        .collect();
    Presentation::build(name, generators, params, rels, &central_ids)
}

/// Construct one of the four shipped presentations, rules derived and
/// completed from the defining relations.
pub fn builtin(which: Builtin) -> Result<PresRef, NcError> {
    let p = match which {
        Builtin::AR => build_from_strings(
            "ar",
            &[("a", 1), ("b", 1), ("c", 1), ("d", 2)],
            &[Symbol::q()],
            &[
                ("b*a", "q*a*b"),
                ("c*a", "q*a*c"),
                ("d*b", "q*b*d"),
                ("d*c", "q*c*d"),
                ("c*b", "b*c"),
                ("d*a - a*d", "(q - q^-1)*b*c"),
                ("a*d - q^-1*b*c", "1"),
            ],
            &[],
        )?,
        Builtin::BRAbcd => build_from_strings(
            "br_abcd",
            &[("a", 1), ("b", 1), ("c", 1), ("d", 2)],
            &[Symbol::q()],
            &[
                ("b*a", "q^2*a*b"),
                ("c*a", "q^-2*a*c"),
                ("a*d", "d*a"),
                ("b*c", "c*b + (1 - q^-2)*a*(d - a)"),
                ("d*b", "b*d + (1 - q^-2)*a*b"),
                ("c*d", "d*c + (1 - q^-2)*c*a"),
                ("a*d - q^2*c*b", "1"),
            ],
            &[],
        )?,
        Builtin::BRAbcp => build_from_strings(
            "br_abcp",
            &[("a", 1), ("b", 1), ("c", 1), ("p", 2)],
            &[Symbol::q()],
            &[
                ("b*a", "q^2*a*b"),
                ("a*c", "q^2*c*a"),
                ("b*c", "c*b - (1 - q^-4)*a*a + (1 - q^-2)*p*a"),
                ("a*p - q^-2*a*a - q^2*c*b", "1"),
            ],
            &["p"],
        )?,
        Builtin::TQR => build_from_strings(
            "tqr",
            &[("a", 1), ("b", 1), ("c", 1), ("d", 2)],
            &[Symbol::q(), Symbol::r()],
            &[
                ("a*b", "r*b*a"),
                ("a*c", "r*c*a"),
                ("b*c", "c*b"),
                ("b*d", "r*d*b + (q^-2 - 1)*(r^2 - 1)*b*a"),
                ("c*d", "r*d*c + (q^-2 - 1)*(r^2 - 1)*c*a"),
                ("a*d - d*a", "(r - r^-1)*q^2*b*c"),
                ("q^2*d*a + (1 - q^2)*a*a - r^-1*q^4*c*b", "1"),
            ],
            &[],
        )?,
    };
    Ok(Arc::new(p))
}

/// A generator-to-polynomial algebra map between two presented algebras.
#[derive(Clone, Debug)]
pub struct BasisMap {
    pub source: PresRef,
    pub target: PresRef,
    /// Image of each source generator, indexed by source GenId.
    pub images: Vec<NCPoly>,
}

impl BasisMap {
    pub fn new(source: PresRef, target: PresRef, images: &[(&str, &str)]) -> BasisMap {
        let mut by_gen = vec![NCPoly::zero(); source.num_generators()];
        for (g, expr) in images {
            let id = source.gen_id(g).expect("source generator");
            by_gen[id as usize] = parse_ncpoly(expr, &target).expect("image parses");
        }
        BasisMap {
            source,
            target,
            images: by_gen,
        }
    }

    /// Push a source element through the map and normalize in the target.
    pub fn apply(&self, x: &NCPoly) -> Result<NCPoly, NcError> {
        self.target.normal_form(&x.map_generators(&self.images))
    }

    /// Check the map kills every source relation, i.e. is well defined.
    pub fn respects_relations(&self) -> Result<bool, NcError> {
        for (l, r) in &self.source.relations {
            if self.apply(&l.sub(r))? != NCPoly::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// d = p - q^-2 a: rewrite abcd elements over the a,b,c,p generators.
pub fn abcd_to_abcp() -> Result<BasisMap, NcError> {
    Ok(BasisMap::new(
        builtin(Builtin::BRAbcd)?,
        builtin(Builtin::BRAbcp)?,
        &[("a", "a"), ("b", "b"), ("c", "c"), ("d", "p - q^-2*a")],
    ))
}

/// p = q^-2 a + d: rewrite a,b,c,p elements over the abcd generators.
pub fn abcp_to_abcd() -> Result<BasisMap, NcError> {
    Ok(BasisMap::new(
        builtin(Builtin::BRAbcp)?,
        builtin(Builtin::BRAbcd)?,
        &[("a", "a"), ("b", "b"), ("c", "c"), ("p", "q^-2*a + d")],
    ))
}

/// Verify that setting every deformation parameter to 1 yields a commutative
/// algebra: all specialized relations hold and all generator pairs commute.
pub fn classical_limit_commutative(p: &Presentation) -> Result<bool, NcError> {
    let mut bindings = BTreeMap::new();
    for s in &p.params {
        bindings.insert(s.clone(), Scalar::one());
    }
    let cl = p.specialize(&format!("{}_classical", p.name), &bindings)?;
    for (l, r) in &cl.relations {
        if !cl.alg_equal(l, r)? {
            return Ok(false);
        }
    }
    for g in cl.gen_ids() {
        for h in cl.gen_ids() {
            let gh = NCPoly::gen(g).nc_mul(&NCPoly::gen(h));
            let hg = NCPoly::gen(h).nc_mul(&NCPoly::gen(g));
            if !cl.alg_equal(&gh, &hg)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::confluence_probe;

    fn nf(p: &Presentation, s: &str) -> NCPoly {
        p.normal_form(&parse_ncpoly(s, p).unwrap()).unwrap()
    }

    #[test]
    fn ar_rules() {
        let p = builtin(Builtin::AR).unwrap();
        assert_eq!(nf(&p, "b*a"), nf(&p, "q*a*b"));
        assert_eq!(nf(&p, "a*d"), nf(&p, "1 + q^-1*b*c"));
        assert_eq!(nf(&p, "d*a"), nf(&p, "1 + q*b*c"));
        assert_eq!(nf(&p, "d*a - a*d"), nf(&p, "(q - q^-1)*b*c"));
        // quantum determinant is central
        for g in ["a", "b", "c", "d"] {
            let det_g = nf(&p, &format!("(a*d - q^-1*b*c)*{g}"));
            let g_det = nf(&p, &format!("{g}*(a*d - q^-1*b*c)"));
            assert_eq!(det_g, g_det);
            assert_eq!(det_g, nf(&p, g));
        }
    }

    #[test]
    fn br_abcd_rules() {
        let p = builtin(Builtin::BRAbcd).unwrap();
        assert_eq!(nf(&p, "b*a"), nf(&p, "q^2*a*b"));
        assert_eq!(nf(&p, "a*d"), nf(&p, "b*c + (1 - q^-2)*a*a + q^-2"));
        assert_eq!(nf(&p, "a*d"), nf(&p, "d*a"));
        assert_eq!(
            nf(&p, "c*b"),
            nf(&p, "q^-2*b*c + (q^-4 - q^-2) + (q^-2 - q^-4)*a*a")
        );
        // q^-1 a + q d is central
        let z = "(q^-1*a + q*d)";
        for g in ["a", "b", "c", "d"] {
            assert_eq!(nf(&p, &format!("{z}*{g}")), nf(&p, &format!("{g}*{z}")));
        }
    }

    #[test]
    fn br_abcp_rules() {
        let p = builtin(Builtin::BRAbcp).unwrap();
        assert_eq!(nf(&p, "a*p"), nf(&p, "a*a + b*c + q^-2"));
        assert_eq!(
            nf(&p, "c*b"),
            nf(&p, "q^-2*b*c - (q^-2 - q^-4) + (q^-2 - q^-4)*a*a")
        );
        for g in ["a", "b", "c"] {
            assert_eq!(nf(&p, &format!("p*{g}")), nf(&p, &format!("{g}*p")));
        }
    }

    #[test]
    fn tqr_rules() {
        let p = builtin(Builtin::TQR).unwrap();
        assert_eq!(nf(&p, "b*a"), nf(&p, "r^-1*a*b"));
        assert_eq!(
            nf(&p, "d*a"),
            nf(&p, "q^-2 + (1 - q^-2)*a*a + r^-1*q^2*b*c")
        );
        assert_eq!(
            nf(&p, "a*d"),
            nf(&p, "q^-2 + (1 - q^-2)*a*a + r*q^2*b*c")
        );
        assert_eq!(
            nf(&p, "d*b"),
            nf(&p, "r^-1*b*d - r^-2*(q^-2 - 1)*(r^2 - 1)*a*b")
        );
    }

    #[test]
    fn all_builtins_confluent() {
        for which in Builtin::all() {
            let p = builtin(which).unwrap();
            let rep = confluence_probe(&p, 300, 5, 42).unwrap();
            assert!(
                rep.counterexamples.is_empty(),
                "{}: counterexamples {:?}",
                p.name,
                rep.counterexamples
            );
        }
    }

    #[test]
    fn basis_change_round_trip_and_transport() {
        let fwd = abcd_to_abcp().unwrap();
        let bwd = abcp_to_abcd().unwrap();
        assert!(fwd.respects_relations().unwrap());
        assert!(bwd.respects_relations().unwrap());
        let abcd = builtin(Builtin::BRAbcd).unwrap();
        for w in abcd.basis_words(3) {
            let x = NCPoly::from_word(w);
            let there = fwd.apply(&x).unwrap();
            let back = bwd.apply(&there).unwrap();
            assert_eq!(back, abcd.normal_form(&x).unwrap());
        }
    }

    #[test]
    fn classical_limits() {
        for which in Builtin::all() {
            let p = builtin(which).unwrap();
            assert!(classical_limit_commutative(&p).unwrap(), "{}", p.name);
        }
    }

    #[test]
    fn tqr_specializes_to_braided_relations_at_r_eq_q() {
        // at r = q the defining relations become the braided ones up to the
        // product table; sanity-check a couple of normal forms are consistent
        let p = builtin(Builtin::TQR).unwrap();
        let mut b = BTreeMap::new();
        b.insert(Symbol::r(), Scalar::q_pow(1));
        let s = p.specialize("tqr_rq", &b).unwrap();
        assert_eq!(
            s.normal_form(&parse_ncpoly("b*a", &s).unwrap()).unwrap(),
            s.normal_form(&parse_ncpoly("q^-1*a*b", &s).unwrap()).unwrap()
        );
        let rep = confluence_probe(&s, 200, 5, 7).unwrap();
        assert!(rep.counterexamples.is_empty());
    }
}
