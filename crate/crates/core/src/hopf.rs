//! Structure maps (coproduct, counit, antipode, star, braiding) over a
//! presented algebra, their extension from generator tables to the whole
//! algebra, and the axiom checker.
//!
//! Plain mode uses the flip of tensor factors as the braiding, so one code
//! path serves ordinary and braided Hopf checks alike. Braided mode extends
//! the generator braiding table with the two multiplicativity laws
//! psi(uv (x) w) and psi(u (x) vw); consistency of the two splits is itself
//! one of the checked axioms rather than an assumption.

use crate::ncalg::{GenId, NcError, NCPoly, PresRef, Word};
use crate::scalar::{Scalar, Symbol};
use crate::tensor::Tensor;
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Braided,
}

#[derive(Debug, thiserror::Error)]
pub enum HopfError {
    #[error("axiom `{0}` requires braided mode")]
    ModeMismatch(String),
    #[error("structure has no star table")]
    MissingStar,
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("braiding table present in plain mode / absent in braided mode")]
    BadBraiding,
    #[error("no unit pivot while inverting the braiding span")]
    SingularBraiding,
    #[error(transparent)]
    Nc(#[from] NcError),
}

/// Generator tables for one (braided) Hopf structure on a presented algebra.
#[derive(Clone, Debug)]
pub struct StructureMap {
    pub name: String,
    pub pres: PresRef,
    pub mode: Mode,
    /// Per generator, the coproduct as a 2-leg tensor.
    pub delta: Vec<Tensor>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<NCPoly>,
    pub star: Option<Vec<NCPoly>>,
    pub braiding: Option<BTreeMap<(GenId, GenId), Tensor>>,
    /// Axioms knowingly not satisfied by this structure (with the checker's
    /// conventions); recorded so reports can distinguish "skipped" from
    /// "holds".
    pub inapplicable_axioms: Vec<&'static str>,
}

impl StructureMap {
    /// Substitute parameter bindings (e.g. r -> q, q -> 3) into every table
    /// and rebuild the presentation under the same bindings.
    pub fn substitute(
        &self,
        name: &str,
        bindings: &BTreeMap<Symbol, Scalar>,
    ) -> Result<StructureMap, HopfError> {
        let pres = Arc::new(self.pres.specialize(name, bindings)?);
        let sub_tensor = |t: &Tensor| -> Result<Tensor, NcError> {
            let mut out = Tensor::zero(t.legs);
            for (ws, c) in t.terms() {
                out.add_term(c.substitute(bindings)?, ws.clone());
            }
            out.normalize(&pres)
        };
        let sub_poly = |p: &NCPoly| -> Result<NCPoly, NcError> {
            pres.normal_form(&p.substitute(bindings)?)
        };
        let sm = StructureMap {
            name: name.into(),
            pres: pres.clone(),
            mode: self.mode,
            delta: self.delta.iter().map(&sub_tensor).collect::<Result<_, _>>()?,
            counit: self
                .counit
                .iter()
                .map(|c| c.substitute(bindings))
                .collect::<Result<_, _>>()
                .map_err(NcError::from)?,
            antipode: self.antipode.iter().map(&sub_poly).collect::<Result<_, _>>()?,
            star: self
                .star
                .as_ref()
                .map(|t| t.iter().map(&sub_poly).collect::<Result<_, _>>())
                .transpose()?,
            braiding: self
                .braiding
                .as_ref()
                .map(|m| {
                    m.iter()
                        .map(|(k, t)| Ok((*k, sub_tensor(t)?)))
                        .collect::<Result<_, NcError>>()
                })
                .transpose()?,
            inapplicable_axioms: self.inapplicable_axioms.clone(),
        };
        sm.validate()?;
        Ok(sm)
    }

    pub fn validate(&self) -> Result<(), HopfError> {
        match self.mode {
            Mode::Plain if self.braiding.is_some() => return Err(HopfError::BadBraiding),
            Mode::Braided if self.braiding.is_none() => return Err(HopfError::BadBraiding),
            _ => {}
        }
        Ok(())
    }
}

pub const AXIOMS: [&str; 18] = [
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "antipode-left",
    "antipode-right",
    "psi-m-left",
    "psi-m-right",
    "psi-delta-left",
    "psi-delta-right",
    "bialgebra",
    "antipode-m",
    "delta-S",
    "counit-m",
    "yang-baxter",
    "star-delta",
    "star-S",
    "star-involution",
];

pub fn axiom_is_braided_only(axiom: &str) -> bool {
    matches!(
        axiom,
        "psi-m-left" | "psi-m-right" | "psi-delta-left" | "psi-delta-right" | "yang-baxter"
    )
}

pub fn axiom_needs_star(axiom: &str) -> bool {
    matches!(axiom, "star-delta" | "star-S" | "star-involution")
}

/// Axioms the checker can evaluate on a structure: right mode, star present.
pub fn applicable_axioms(sm: &StructureMap) -> Vec<&'static str> {
    AXIOMS
        .iter()
        .copied()
        .filter(|a| !(axiom_is_braided_only(a) && sm.mode == Mode::Plain))
        .filter(|a| !(axiom_needs_star(a) && sm.star.is_none()))
        .filter(|a| !sm.inapplicable_axioms.contains(a))
        .collect()
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub axiom: String,
    pub structure: String,
    pub word_length_bound: usize,
    pub inputs_checked: usize,
    /// (input description, nonzero residual) pairs.
    pub witnesses: Vec<(String, String)>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Extension engine over one StructureMap, with memoized word-level maps.
pub struct HopfOps {
    pub sm: Arc<StructureMap>,
    psi_cache: RefCell<BTreeMap<(Word, Word), Tensor>>,
    delta_cache: RefCell<BTreeMap<Word, Tensor>>,
    antipode_cache: RefCell<BTreeMap<Word, NCPoly>>,
}

impl HopfOps {
    pub fn new(sm: Arc<StructureMap>) -> HopfOps {
        HopfOps {
            sm,
            psi_cache: RefCell::new(BTreeMap::new()),
            delta_cache: RefCell::new(BTreeMap::new()),
            antipode_cache: RefCell::new(BTreeMap::new()),
        }
    }

    fn pres(&self) -> &PresRef {
        &self.sm.pres
    }

    /// Braiding on a pair of words: flip in plain mode, recursive table
    /// extension in braided mode. Output legs normalized.
    pub fn braid_words(&self, v: &Word, w: &Word) -> Result<Tensor, HopfError> {
        match self.sm.mode {
            Mode::Plain => Ok(Tensor::term(Scalar::one(), vec![w.clone(), v.clone()])),
            Mode::Braided => self.psi_words(v, w),
        }
    }

    fn psi_words(&self, v: &Word, w: &Word) -> Result<Tensor, HopfError> {
        if let Some(t) = self.psi_cache.borrow().get(&(v.clone(), w.clone())) {
            return Ok(t.clone());
        }
        let out = self.psi_words_uncached(v, w)?;
        self.psi_cache
            .borrow_mut()
            .insert((v.clone(), w.clone()), out.clone());
        Ok(out)
    }

    fn psi_words_uncached(&self, v: &Word, w: &Word) -> Result<Tensor, HopfError> {
        if v.is_one() {
            return Ok(Tensor::term(Scalar::one(), vec![w.clone(), Word::one()]));
        }
        if w.is_one() {
            return Ok(Tensor::term(Scalar::one(), vec![Word::one(), v.clone()]));
        }
        if v.len() == 1 && w.len() == 1 {
            let table = self.sm.braiding.as_ref().ok_or(HopfError::BadBraiding)?;
            let t = table
                .get(&(v.0[0], w.0[0]))
                .expect("braiding table covers all generator pairs")
                .clone();
            return Ok(t.normalize(self.pres())?);
        }
        if v.len() > 1 {
            // psi((g v') (x) w) = (id (x) m)(psi (x) id)(id (x) psi)
            let g = Word::gen(v.0[0]);
            let v_rest = Word(v.0[1..].to_vec());
            let inner = self.psi_words(&v_rest, w)?; // legs [w_i, v_i]
            let mut out = Tensor::zero(2);
            for (ws, c) in inner.terms() {
                let first = self.psi_words(&g, &ws[0])?; // legs [w_ij, g_j]
                for (ws2, c2) in first.terms() {
                    let t = Tensor::term(
                        c.mul(c2),
                        vec![ws2[0].clone(), ws2[1].concat(&ws[1])],
                    );
                    out = out.add(&t);
                }
            }
            return Ok(out.normalize(self.pres())?);
        }
        // v single letter, w = h w': psi(v (x) (h w')) = (m (x) id)(id (x) psi)(psi (x) id)
        let h = Word::gen(w.0[0]);
        let w_rest = Word(w.0[1..].to_vec());
        let first = self.psi_words(v, &h)?; // legs [h_i, v_i]
        let mut out = Tensor::zero(2);
        for (ws, c) in first.terms() {
            let inner = self.psi_words(&ws[1], &w_rest)?; // legs [w_j, u_j]
            for (ws2, c2) in inner.terms() {
                let t = Tensor::term(
                    c.mul(c2),
                    vec![ws[0].concat(&ws2[0]), ws2[1].clone()],
                );
                out = out.add(&t);
            }
        }
        Ok(out.normalize(self.pres())?)
    }

    /// Bilinear braiding of two algebra elements (normalized first).
    pub fn psi_extend(&self, x: &NCPoly, y: &NCPoly) -> Result<Tensor, HopfError> {
        if self.sm.mode == Mode::Plain {
            return Err(HopfError::ModeMismatch("psi".into()));
        }
        self.braid_polys(x, y)
    }

    fn braid_polys(&self, x: &NCPoly, y: &NCPoly) -> Result<Tensor, HopfError> {
        let xn = self.pres().normal_form(x)?;
        let yn = self.pres().normal_form(y)?;
        let mut out = Tensor::zero(2);
        for (v, cv) in xn.terms() {
            for (w, cw) in yn.terms() {
                out = out.add(&self.braid_words(v, w)?.scale(&cv.mul(cw)));
            }
        }
        Ok(out)
    }

    /// Braid the adjacent legs (i, i+1) of a tensor.
    pub fn braid_legs(&self, t: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        t.map_leg_pair(i, 2, |v, w| self.braid_words(v, w))
    }

    /// Product in the tensor square: componentwise in plain mode, braided
    /// crossing of the inner factors in braided mode.
    pub fn tensor_mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor, HopfError> {
        assert_eq!(x.legs, 2);
        assert_eq!(y.legs, 2);
        let mut out = Tensor::zero(2);
        for (uv, c1) in x.terms() {
            for (wz, c2) in y.terms() {
                let crossed = self.braid_words(&uv[1], &wz[0])?; // legs [w_i, v_i]
                for (ws, c3) in crossed.terms() {
                    out.add_term(
                        c1.mul(c2).mul(c3),
                        vec![uv[0].concat(&ws[0]), ws[1].concat(&wz[1])],
                    );
                }
            }
        }
        Ok(out.normalize(self.pres())?)
    }

    fn delta_word(&self, w: &Word) -> Result<Tensor, HopfError> {
        if let Some(t) = self.delta_cache.borrow().get(w) {
            return Ok(t.clone());
        }
        let out = if w.is_one() {
            Tensor::unit(2)
        } else {
            let g = self.sm.delta[w.0[0] as usize].clone().normalize(self.pres())?;
            let rest = self.delta_word(&Word(w.0[1..].to_vec()))?;
            self.tensor_mul(&g, &rest)?
        };
        self.delta_cache.borrow_mut().insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Coproduct of an algebra element.
    pub fn delta_extend(&self, x: &NCPoly) -> Result<Tensor, HopfError> {
        let xn = self.pres().normal_form(x)?;
        let mut out = Tensor::zero(2);
        for (w, c) in xn.terms() {
            out = out.add(&self.delta_word(w)?.scale(c));
        }
        Ok(out)
    }

    /// Apply the coproduct to one leg of a tensor.
    pub fn delta_leg(&self, t: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        t.map_leg(i, 2, |w| self.delta_word(w))
    }

    /// Counit of an algebra element.
    pub fn counit_extend(&self, x: &NCPoly) -> Result<Scalar, HopfError> {
        let xn = self.pres().normal_form(x)?;
        let mut out = Scalar::zero();
        for (w, c) in xn.terms() {
            let mut e = c.clone();
            for g in &w.0 {
                e = e.mul(&self.sm.counit[*g as usize]);
            }
            out = out.add(&e);
        }
        Ok(out)
    }

    /// Replace one leg by its counit (scalar), dropping the leg.
    pub fn counit_leg(&self, t: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        t.map_leg(i, 0, |w| {
            let mut e = Scalar::one();
            for g in &w.0 {
                e = e.mul(&self.sm.counit[*g as usize]);
            }
            Ok::<_, HopfError>(Tensor::term(e, vec![]))
        })
    }

    fn antipode_word(&self, w: &Word) -> Result<NCPoly, HopfError> {
        if let Some(p) = self.antipode_cache.borrow().get(w) {
            return Ok(p.clone());
        }
        let out = if w.is_one() {
            NCPoly::one()
        } else {
            match self.sm.mode {
                Mode::Plain => {
                    // S(g1...gn) = S(gn)...S(g1)
                    let mut acc = NCPoly::one();
                    for g in w.0.iter().rev() {
                        acc = acc.nc_mul(&self.sm.antipode[*g as usize]);
                    }
                    self.pres().normal_form(&acc)?
                }
                Mode::Braided => {
                    // S(g w') = m(psi(S(g) (x) S(w')))
                    let sg = self.sm.antipode[w.0[0] as usize].clone();
                    let srest = self.antipode_word(&Word(w.0[1..].to_vec()))?;
                    let crossed = self.braid_polys(&sg, &srest)?;
                    crossed.mul_legs(0).normalize(self.pres())?.into_poly()
                }
            }
        };
        self.antipode_cache.borrow_mut().insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Antipode of an algebra element.
    pub fn antipode_extend(&self, x: &NCPoly) -> Result<NCPoly, HopfError> {
        let xn = self.pres().normal_form(x)?;
        let mut out = NCPoly::zero();
        for (w, c) in xn.terms() {
            out = out.add(&self.antipode_word(w)?.scale(c));
        }
        Ok(self.pres().normal_form(&out)?)
    }

    pub fn antipode_leg(&self, t: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        t.map_leg(i, 1, |w| Ok(Tensor::from_poly(&self.antipode_word(w)?)))
    }

    fn star_word(&self, w: &Word) -> Result<NCPoly, HopfError> {
        let table = self.sm.star.as_ref().ok_or(HopfError::MissingStar)?;
        // anti-homomorphism: coefficients fixed (real parameters), word reversed
        let mut acc = NCPoly::one();
        for g in w.0.iter().rev() {
            acc = acc.nc_mul(&table[*g as usize]);
        }
        Ok(self.pres().normal_form(&acc)?)
    }

    /// Star involution of an algebra element.
    pub fn star_extend(&self, x: &NCPoly) -> Result<NCPoly, HopfError> {
        let xn = self.pres().normal_form(x)?;
        let mut out = NCPoly::zero();
        for (w, c) in xn.terms() {
            out = out.add(&self.star_word(w)?.scale(c));
        }
        Ok(self.pres().normal_form(&out)?)
    }

    pub fn star_leg(&self, t: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        t.map_leg(i, 1, |w| Ok(Tensor::from_poly(&self.star_word(w)?)))
    }

    fn mul_normalize(&self, t: &Tensor, i: usize) -> Result<Tensor, HopfError> {
        Ok(t.mul_legs(i).normalize(self.pres())?)
    }

    fn word_tensor(words: &[&Word]) -> Tensor {
        Tensor::term(Scalar::one(), words.iter().map(|w| (*w).clone()).collect())
    }

    /// Evaluate one axiom on all basis-word tuples of total length <= bound.
    pub fn check_axiom(&self, axiom: &str, bound: usize) -> Result<CheckReport, HopfError> {
        let (inputs, residuals) = self.axiom_residuals(axiom, bound)?;
        Ok(CheckReport {
            axiom: axiom.into(),
            structure: self.sm.name.clone(),
            word_length_bound: bound,
            inputs_checked: inputs,
            witnesses: residuals
                .into_iter()
                .map(|(input, t)| (input, t.format(self.pres())))
                .collect(),
        })
    }

    /// Evaluate one axiom on all admissible inputs up to the length bound;
    /// returns the input count and the nonzero residual tensors.
    pub fn axiom_residuals(
        &self,
        axiom: &str,
        bound: usize,
    ) -> Result<(usize, Vec<(String, Tensor)>), HopfError> {
        if !AXIOMS.contains(&axiom) {
            return Err(HopfError::UnknownAxiom(axiom.into()));
        }
        if axiom_is_braided_only(axiom) && self.sm.mode == Mode::Plain {
            return Err(HopfError::ModeMismatch(axiom.into()));
        }
        if axiom_needs_star(axiom) && self.sm.star.is_none() {
            return Err(HopfError::MissingStar);
        }
        let p = self.pres().clone();
        let words = p.basis_words(bound);
        let mut residuals = Vec::new();
        let mut inputs = 0usize;

        match axiom {
            "associativity" | "psi-m-left" | "psi-m-right" | "yang-baxter" => {
                for x in &words {
                    for y in &words {
                        for z in &words {
                            if x.len() + y.len() + z.len() > bound {
                                continue;
                            }
                            inputs += 1;
                            let residual = self.axiom_triple(axiom, x, y, z)?;
                            if !residual.is_zero() {
                                residuals.push((
                                    format!(
                                        "{} , {} , {}",
                                        p.format_word(x),
                                        p.format_word(y),
                                        p.format_word(z)
                                    ),
                                    residual,
                                ));
                            }
                        }
                    }
                }
            }
            "psi-delta-left" | "psi-delta-right" | "bialgebra" | "antipode-m" | "counit-m" => {
                for x in &words {
                    for y in &words {
                        if x.len() + y.len() > bound {
                            continue;
                        }
                        inputs += 1;
                        let residual = self.axiom_pair(axiom, x, y)?;
                        if !residual.is_zero() {
                            residuals.push((
                                format!("{} , {}", p.format_word(x), p.format_word(y)),
                                residual,
                            ));
                        }
                    }
                }
            }
            _ => {
                for w in &words {
                    inputs += 1;
                    let residual = self.axiom_single(axiom, w)?;
                    if !residual.is_zero() {
                        residuals.push((p.format_word(w), residual));
                    }
                }
            }
        }
        Ok((inputs, residuals))
    }

    fn axiom_single(&self, axiom: &str, w: &Word) -> Result<Tensor, HopfError> {
        let p = self.pres();
        let x = NCPoly::from_word(w.clone());
        Ok(match axiom {
            "unit" => {
                let lhs = p.normal_form(&NCPoly::one().nc_mul(&x))?;
                let rhs = p.normal_form(&x.nc_mul(&NCPoly::one()))?;
                let id = p.normal_form(&x)?;
                Tensor::from_poly(&lhs.sub(&id)).add(&Tensor::from_poly(&rhs.sub(&id)))
            }
            "coassociativity" => {
                let d = self.delta_word(w)?;
                let lhs = self.delta_leg(&d, 0)?;
                let rhs = self.delta_leg(&d, 1)?;
                lhs.sub(&rhs)
            }
            "counit" => {
                let d = self.delta_word(w)?;
                let left = self.counit_leg(&d, 0)?;
                let right = self.counit_leg(&d, 1)?;
                let id = Tensor::from_poly(&p.normal_form(&x)?);
                left.sub(&id).add(&right.sub(&id))
            }
            "antipode-left" => {
                let d = self.delta_word(w)?;
                let s = self.antipode_leg(&d, 0)?;
                let lhs = self.mul_normalize(&s, 0)?;
                let rhs = Tensor::from_poly(&NCPoly::from_scalar(self.counit_extend(&x)?));
                lhs.sub(&rhs)
            }
            "antipode-right" => {
                let d = self.delta_word(w)?;
                let s = self.antipode_leg(&d, 1)?;
                let lhs = self.mul_normalize(&s, 0)?;
                let rhs = Tensor::from_poly(&NCPoly::from_scalar(self.counit_extend(&x)?));
                lhs.sub(&rhs)
            }
            "delta-S" => {
                // Delta(S x) = (S (x) S) psi Delta(x)
                let lhs = self.delta_extend(&self.antipode_word(w)?)?;
                let d = self.delta_word(w)?;
                let crossed = self.braid_legs(&d, 0)?;
                let rhs = self.antipode_leg(&self.antipode_leg(&crossed, 0)?, 1)?
                    .normalize(p)?;
                lhs.sub(&rhs)
            }
            "star-delta" => {
                // Delta(x*) = flip((* (x) *) Delta(x))
                let lhs = self.delta_extend(&self.star_word(w)?)?;
                let d = self.delta_word(w)?;
                let rhs = self
                    .star_leg(&self.star_leg(&d, 0)?, 1)?
                    .flip_legs(0)
                    .normalize(p)?;
                lhs.sub(&rhs)
            }
            "star-S" => {
                let lhs = self.antipode_extend(&self.star_word(w)?)?;
                let rhs = self.star_extend(&self.antipode_word(w)?)?;
                Tensor::from_poly(&lhs.sub(&rhs))
            }
            "star-involution" => {
                let ss = self.star_extend(&self.star_word(w)?)?;
                Tensor::from_poly(&ss.sub(&p.normal_form(&x)?))
            }
            _ => unreachable!("single-input axiom"),
        })
    }

    fn axiom_pair(&self, axiom: &str, x: &Word, y: &Word) -> Result<Tensor, HopfError> {
        let p = self.pres();
        let xy = p.normal_form(&NCPoly::from_word(x.clone()).nc_mul(&NCPoly::from_word(y.clone())))?;
        Ok(match axiom {
            "bialgebra" => {
                let lhs = self.delta_extend(&xy)?;
                let rhs = self.tensor_mul(&self.delta_word(x)?, &self.delta_word(y)?)?;
                lhs.sub(&rhs)
            }
            "antipode-m" => {
                // S(xy) = m psi (S(x) (x) S(y))
                let lhs = self.antipode_extend(&xy)?;
                let crossed =
                    self.braid_polys(&self.antipode_word(x)?, &self.antipode_word(y)?)?;
                let rhs = self.mul_normalize(&crossed, 0)?.into_poly();
                Tensor::from_poly(&lhs.sub(&rhs))
            }
            "counit-m" => {
                let lhs = self.counit_extend(&xy)?;
                let rhs = self
                    .counit_extend(&NCPoly::from_word(x.clone()))?
                    .mul(&self.counit_extend(&NCPoly::from_word(y.clone()))?);
                Tensor::from_poly(&NCPoly::from_scalar(lhs.sub(&rhs)))
            }
            "psi-delta-left" => {
                // (id (x) Delta) psi = (psi (x) id)(id (x) psi)(Delta (x) id)
                let crossed = self.braid_words(x, y)?;
                let lhs = self.delta_leg(&crossed, 1)?.normalize(p)?;
                let t = Self::word_tensor(&[x, y]);
                let t = self.delta_leg(&t, 0)?.normalize(p)?;
                let t = self.braid_legs(&t, 1)?;
                let rhs = self.braid_legs(&t, 0)?.normalize(p)?;
                lhs.sub(&rhs)
            }
            "psi-delta-right" => {
                let crossed = self.braid_words(x, y)?;
                let lhs = self.delta_leg(&crossed, 0)?.normalize(p)?;
                let t = Self::word_tensor(&[x, y]);
                let t = self.delta_leg(&t, 1)?.normalize(p)?;
                let t = self.braid_legs(&t, 0)?;
                let rhs = self.braid_legs(&t, 1)?.normalize(p)?;
                lhs.sub(&rhs)
            }
            _ => unreachable!("pair axiom"),
        })
    }

    fn axiom_triple(&self, axiom: &str, x: &Word, y: &Word, z: &Word) -> Result<Tensor, HopfError> {
        let p = self.pres();
        Ok(match axiom {
            "associativity" => {
                let xp = NCPoly::from_word(x.clone());
                let yp = NCPoly::from_word(y.clone());
                let zp = NCPoly::from_word(z.clone());
                let lhs = p.normal_form(&xp.nc_mul(&yp).nc_mul(&zp))?;
                let rhs = p.normal_form(&xp.nc_mul(&yp.nc_mul(&zp)))?;
                Tensor::from_poly(&lhs.sub(&rhs))
            }
            "psi-m-left" => {
                // psi(m (x) id) = (id (x) m)(psi (x) id)(id (x) psi)
                let xy = p.normal_form(
                    &NCPoly::from_word(x.clone()).nc_mul(&NCPoly::from_word(y.clone())),
                )?;
                let lhs = self.braid_polys(&xy, &NCPoly::from_word(z.clone()))?;
                let t = Self::word_tensor(&[x, y, z]);
                let t = self.braid_legs(&t, 1)?;
                let t = self.braid_legs(&t, 0)?;
                let rhs = self.mul_normalize(&t, 1)?;
                lhs.sub(&rhs)
            }
            "psi-m-right" => {
                let yz = p.normal_form(
                    &NCPoly::from_word(y.clone()).nc_mul(&NCPoly::from_word(z.clone())),
                )?;
                let lhs = self.braid_polys(&NCPoly::from_word(x.clone()), &yz)?;
                let t = Self::word_tensor(&[x, y, z]);
                let t = self.braid_legs(&t, 0)?;
                let t = self.braid_legs(&t, 1)?;
                let rhs = self.mul_normalize(&t, 0)?;
                lhs.sub(&rhs)
            }
            "yang-baxter" => {
                let t = Self::word_tensor(&[x, y, z]);
                let l = self.braid_legs(&self.braid_legs(&self.braid_legs(&t, 0)?, 1)?, 0)?;
                let r = self.braid_legs(&self.braid_legs(&self.braid_legs(&t, 1)?, 0)?, 1)?;
                l.sub(&r).normalize(p)?
            }
            _ => unreachable!("triple axiom"),
        })
    }

    /// Well-definedness: each structure map kills lhs - rhs of every
    /// defining relation.
    pub fn check_well_defined(&self) -> Result<CheckReport, HopfError> {
        let p = self.pres();
        let mut witnesses = Vec::new();
        let mut inputs = 0;
        for (l, r) in &p.relations {
            let diff = l.sub(r);
            inputs += 1;
            let d = self.delta_extend(&diff)?;
            if !d.is_zero() {
                witnesses.push((format!("delta({})", p.format_poly(&diff)), d.format(p)));
            }
            let e = self.counit_extend(&diff)?;
            if !e.is_zero() {
                witnesses.push((format!("counit({})", p.format_poly(&diff)), format!("{e}")));
            }
            let s = self.antipode_extend(&diff)?;
            if !s.is_zero() {
                witnesses.push((format!("antipode({})", p.format_poly(&diff)), p.format_poly(&s)));
            }
            if self.sm.star.is_some() {
                let st = self.star_extend(&diff)?;
                if !st.is_zero() {
                    witnesses.push((format!("star({})", p.format_poly(&diff)), p.format_poly(&st)));
                }
            }
            if self.sm.mode == Mode::Braided {
                for g in p.gen_ids() {
                    let gp = NCPoly::gen(g);
                    let a = self.braid_polys(&diff, &gp)?;
                    let b = self.braid_polys(&gp, &diff)?;
                    if !a.is_zero() || !b.is_zero() {
                        witnesses.push((
                            format!("psi({}, {})", p.format_poly(&diff), p.gen_name(g)),
                            format!("{} | {}", a.format(p), b.format(p)),
                        ));
                    }
                }
            }
        }
        Ok(CheckReport {
            axiom: "well-defined".into(),
            structure: self.sm.name.clone(),
            word_length_bound: 0,
            inputs_checked: inputs,
            witnesses,
        })
    }

    /// Central and bosonic: t commutes with every generator, and braids
    /// trivially on both sides.
    pub fn check_bosonic_central(&self, t: &NCPoly) -> Result<CheckReport, HopfError> {
        if self.sm.mode != Mode::Braided {
            return Err(HopfError::ModeMismatch("bosonic".into()));
        }
        let p = self.pres();
        let tn = p.normal_form(t)?;
        let mut witnesses = Vec::new();
        let mut inputs = 0;
        for g in p.gen_ids() {
            inputs += 1;
            let gp = NCPoly::gen(g);
            let comm = p.normal_form(&tn.nc_mul(&gp).sub(&gp.nc_mul(&tn)))?;
            if !comm.is_zero() {
                witnesses.push((
                    format!("[{}, {}]", p.format_poly(&tn), p.gen_name(g)),
                    p.format_poly(&comm),
                ));
            }
            let fwd = self.braid_polys(&tn, &gp)?;
            let fwd_expect = Tensor::from_poly(&gp).outer(&Tensor::from_poly(&tn));
            let d1 = fwd.sub(&fwd_expect.normalize(p)?);
            if !d1.is_zero() {
                witnesses.push((
                    format!("psi(t (x) {})", p.gen_name(g)),
                    d1.format(p),
                ));
            }
            let bwd = self.braid_polys(&gp, &tn)?;
            let bwd_expect = Tensor::from_poly(&tn).outer(&Tensor::from_poly(&gp));
            let d2 = bwd.sub(&bwd_expect.normalize(p)?);
            if !d2.is_zero() {
                witnesses.push((
                    format!("psi({} (x) t)", p.gen_name(g)),
                    d2.format(p),
                ));
            }
        }
        Ok(CheckReport {
            axiom: "bosonic-central".into(),
            structure: self.sm.name.clone(),
            word_length_bound: 1,
            inputs_checked: inputs,
            witnesses,
        })
    }

    /// Invert the braiding on the span of letter pairs: returns a table T with
    /// psi(T(g (x) h)) = g (x) h for every generator pair. The span is the
    /// closure of letter pairs under psi (legs stay single letters or 1 for
    /// the shipped tables); inversion is exact Gaussian elimination with
    /// unit-preferred pivoting.
    pub fn psi_inverse_on_letters(
        &self,
    ) -> Result<BTreeMap<(GenId, GenId), Tensor>, HopfError> {
        if self.sm.mode != Mode::Braided {
            return Err(HopfError::ModeMismatch("psi-inverse".into()));
        }
        let p = self.pres();
        // closure of the pair span under psi
        let mut span: Vec<(Word, Word)> = Vec::new();
        let mut queue: Vec<(Word, Word)> = Vec::new();
        for g in p.gen_ids() {
            for h in p.gen_ids() {
                queue.push((Word::gen(g), Word::gen(h)));
            }
        }
        while let Some(pair) = queue.pop() {
            if span.contains(&pair) {
                continue;
            }
            let img = self.braid_words(&pair.0, &pair.1)?;
            span.push(pair);
            for (ws, _) in img.terms() {
                let next = (ws[0].clone(), ws[1].clone());
                if !span.contains(&next) {
                    queue.push(next);
                }
            }
        }
        span.sort();
        let n = span.len();
        let idx = |w0: &Word, w1: &Word| span.iter().position(|(a, b)| a == w0 && b == w1);
        // columns = psi images of span elements
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        for (v, w) in &span {
            let img = self.braid_words(v, w)?;
            let mut col = vec![Scalar::zero(); n];
            for (ws, c) in img.terms() {
                let i = idx(&ws[0], &ws[1]).expect("span is psi-closed");
                col[i] = col[i].add(c);
            }
            cols.push(col);
        }
        // solve M x = e_target for each generator pair target
        let mut targets = Vec::new();
        for g in p.gen_ids() {
            for h in p.gen_ids() {
                targets.push((g, h));
            }
        }
        // augmented Gauss-Jordan over the scalar ring, unit pivots only
        let mut m: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row: Vec<Scalar> = (0..n).map(|j| cols[j][i].clone()).collect();
                for (g, h) in &targets {
                    let ti = idx(&Word::gen(*g), &Word::gen(*h)).unwrap();
                    row.push(if ti == i { Scalar::one() } else { Scalar::zero() });
                }
                row
            })
            .collect();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut used_rows = vec![false; n];
        for col in 0..n {
            let Some(row) = (0..n).find(|&r| !used_rows[r] && m[r][col].is_unit()) else {
                return Err(HopfError::SingularBraiding);
            };
            used_rows[row] = true;
            pivot_of_col[col] = Some(row);
            let inv = m[row][col].unit_inverse().expect("unit pivot");
            for j in 0..m[row].len() {
                m[row][j] = m[row][j].mul(&inv);
            }
            for r in 0..n {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..m[r].len() {
                        let delta = m[row][j].mul(&f);
                        m[r][j] = m[r][j].sub(&delta);
                    }
                }
            }
        }
        let mut out = BTreeMap::new();
        for (k, (g, h)) in targets.iter().enumerate() {
            let mut t = Tensor::zero(2);
            for col in 0..n {
                let row = pivot_of_col[col].unwrap();
                let c = m[row][n + k].clone();
                if !c.is_zero() {
                    let (w0, w1) = &span[col];
                    t.add_term(c, vec![w0.clone(), w1.clone()]);
                }
            }
            out.insert((*g, *h), t);
        }
        Ok(out)
    }
}
