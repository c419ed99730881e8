//! Free noncommutative polynomials over `Scalar` and a rewriting engine that
//! computes canonical normal forms in a presented quotient algebra.
//!
//! Rule sets are derived mechanically from relation lists: the order-largest
//! word of each relation is isolated on the left-hand side (after reduction by
//! already-oriented rules), the rules are inter-reduced, and unresolved
//! overlaps up to a bounded word length are adjoined as extra rules.

use crate::scalar::{Scalar, ScalarError, Symbol};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type GenId = u8;

/// A monomial in the free algebra: a finite sequence of generator indices.
/// The empty word is the unit element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn one() -> Word {
        Word(Vec::new())
    }

    pub fn gen(g: GenId) -> Word {
        Word(vec![g])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum NcError {
    #[error("generator alphabet mismatch")]
    AlphabetMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("rewrite step budget exceeded (mis-oriented rule set?)")]
    BudgetExceeded,
    #[error("relation `{0}` reduces to a nonzero scalar: rules would prove 1 = 0")]
    Inconsistent(String),
    #[error("relation `{0}` has a non-unit leading coefficient and cannot be oriented")]
    NonUnitLeading(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Finite Scalar-linear combination of words, canonical (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn one() -> NCPoly {
        NCPoly::from_word(Word::one())
    }

    pub fn from_word(w: Word) -> NCPoly {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one());
        NCPoly { terms }
    }

    pub fn gen(g: GenId) -> NCPoly {
        NCPoly::from_word(Word::gen(g))
    }

    pub fn from_scalar(c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(Word::one(), c);
        p
    }

    pub fn term(w: Word, c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k.mul(c));
        }
        out
    }

    /// Bilinear concatenation product in the free algebra (not reduced).
    pub fn nc_mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        out
    }

    /// Apply a substitution to every coefficient.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<NCPoly, ScalarError> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.substitute(bindings)?);
        }
        Ok(out)
    }

    /// Replace each generator by its image and multiply out.
    pub fn map_generators(&self, images: &[NCPoly]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut prod = NCPoly::from_scalar(c.clone());
            for g in &w.0 {
                prod = prod.nc_mul(&images[*g as usize]);
            }
            out = out.add(&prod);
        }
        out
    }

    pub fn max_generator(&self) -> Option<GenId> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().copied())
            .max()
    }
}

/// Oriented rewrite rule: `lhs` (a word of length >= 2) maps to a polynomial
/// strictly smaller under the presentation's monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// A presented quotient algebra: ordered alphabet with weights, oriented rule
/// set, and canonical normal forms via exhaustive rewriting.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub weights: Vec<u32>,
    pub params: Vec<Symbol>,
    /// Relations as given (lhs, rhs pairs), before orientation.
    pub relations: Vec<(NCPoly, NCPoly)>,
    /// Generators declared central; commutation rules are derived from this.
    pub central: Vec<GenId>,
    pub rules: Vec<RewriteRule>,
    /// Rules adjoined by bounded overlap completion, recorded for the report.
    pub completion_added: Vec<RewriteRule>,
}

pub const STEP_BUDGET: u64 = 1_000_000;

impl Presentation {
    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as GenId)
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.generators[g as usize]
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.generators.len() as GenId).into_iter()
    }

    pub fn word_weight(&self, w: &Word) -> u64 {
        w.0.iter().map(|g| self.weights[*g as usize] as u64).sum()
    }

    /// Monomial order: graded by total weight, ties broken lexicographically
    /// by alphabet order reading left to right.
    pub fn word_cmp(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        self.word_weight(a)
            .cmp(&self.word_weight(b))
            .then_with(|| a.0.cmp(&b.0))
    }

    pub fn leading_word<'a>(&self, p: &'a NCPoly) -> Option<&'a Word> {
        p.terms.keys().max_by(|a, b| self.word_cmp(a, b))
    }

    /// Build a presentation from relations: orient, inter-reduce, complete.
    pub fn build(
        name: &str,
        generators: &[(&str, u32)],
        params: &[Symbol],
        relations: Vec<(NCPoly, NCPoly)>,
        central: &[GenId],
    ) -> Result<Presentation, NcError> {
        let mut p = Presentation {
            name: name.into(),
            generators: generators.iter().map(|(n, _)| n.to_string()).collect(),
            weights: generators.iter().map(|(_, w)| *w).collect(),
            params: params.to_vec(),
            relations,
            central: central.to_vec(),
            rules: Vec::new(),
            completion_added: Vec::new(),
        };
        let mut pending: Vec<NCPoly> = p
            .relations
            .iter()
            .map(|(l, r)| l.sub(r))
            .collect();
        // centrality z g = g z for every other generator g, oriented so the
        // central (heavier) letter moves right
        for z in &p.central {
            for g in p.gen_ids() {
                if g != *z {
                    let zg = NCPoly::from_word(Word(vec![*z, g]));
                    let gz = NCPoly::from_word(Word(vec![g, *z]));
                    pending.push(zg.sub(&gz));
                }
            }
        }
        p.orient_all(pending)?;
        let added = p.complete(6)?;
        p.completion_added = added;
        Ok(p)
    }

    fn orient_all(&mut self, mut pending: Vec<NCPoly>) -> Result<(), NcError> {
        loop {
            let mut progressed = false;
            let mut stuck: Vec<NCPoly> = Vec::new();
            while let Some(rel) = pending.pop() {
                let red = self.normal_form(&rel)?;
                if red.is_zero() {
                    progressed = true;
                    continue;
                }
                let lead = self.leading_word(&red).unwrap().clone();
                if lead.is_one() {
                    return Err(NcError::Inconsistent(format!("{red:?}")));
                }
                let coeff = red.terms.get(&lead).unwrap().clone();
                if !coeff.is_unit() {
                    stuck.push(red);
                    continue;
                }
                // rule: lead -> -(red - coeff*lead)/coeff
                let mut rest = red.clone();
                rest.add_term(lead.clone(), coeff.neg());
                let rhs = rest.neg().scale(&coeff.unit_inverse()?);
                // demote existing rules whose lhs now reduces
                let mut kept = Vec::new();
                for rule in self.rules.drain(..) {
                    if contains_subword(&rule.lhs, &lead) {
                        pending.push(NCPoly::from_word(rule.lhs).sub(&rule.rhs));
                    } else {
                        kept.push(rule);
                    }
                }
                self.rules = kept;
                self.rules.push(RewriteRule { lhs: lead, rhs });
                // re-reduce every rhs against the enlarged rule set
                self.inter_reduce()?;
                progressed = true;
            }
            if stuck.is_empty() {
                return Ok(());
            }
            if !progressed {
                return Err(NcError::NonUnitLeading(format!("{:?}", stuck[0])));
            }
            pending = stuck;
        }
    }

    fn inter_reduce(&mut self) -> Result<(), NcError> {
        loop {
            let mut changed = false;
            for i in 0..self.rules.len() {
                let rhs = self.rules[i].rhs.clone();
                let reduced = self.normal_form_excluding(&rhs, usize::MAX)?;
                if reduced != rhs {
                    self.rules[i].rhs = reduced;
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Bounded overlap completion: superpose rule left-hand sides, reduce both
    /// ways, orient any nonzero difference as a new rule. Returns added rules.
    fn complete(&mut self, max_len: usize) -> Result<Vec<RewriteRule>, NcError> {
        let mut added = Vec::new();
        loop {
            let mut new_relations = Vec::new();
            for amb in self.overlap_ambiguities(max_len) {
                let (nf1, nf2) = self.resolve_ambiguity(&amb)?;
                if nf1 != nf2 {
                    new_relations.push(nf1.sub(&nf2));
                }
            }
            if new_relations.is_empty() {
                return Ok(added);
            }
            let before = self.rules.clone();
            self.orient_all(new_relations)?;
            for rule in &self.rules {
                if !before.contains(rule) {
                    added.push(rule.clone());
                }
            }
        }
    }

    /// All overlap ambiguities among rule lhs's: words where two rule
    /// applications compete, up to the given length bound.
    pub fn overlap_ambiguities(&self, max_len: usize) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                // proper overlap: a suffix of r1.lhs equals a prefix of r2.lhs
                let l1 = &r1.lhs.0;
                let l2 = &r2.lhs.0;
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut w = l1.clone();
                        w.extend_from_slice(&l2[k..]);
                        if w.len() <= max_len {
                            out.push(Ambiguity {
                                word: Word(w),
                                rule_a: i,
                                pos_a: 0,
                                rule_b: j,
                                pos_b: l1.len() - k,
                            });
                        }
                    }
                }
                // inclusion: r2.lhs occurs strictly inside r1.lhs
                if i != j && l2.len() < l1.len() {
                    for pos in 0..=l1.len() - l2.len() {
                        if &l1[pos..pos + l2.len()] == l2.as_slice() {
                            out.push(Ambiguity {
                                word: Word(l1.clone()),
                                rule_a: i,
                                pos_a: 0,
                                rule_b: j,
                                pos_b: pos,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduce an ambiguity's word along its two competing first steps.
    pub fn resolve_ambiguity(&self, amb: &Ambiguity) -> Result<(NCPoly, NCPoly), NcError> {
        let a = self.apply_rule_at(&amb.word, amb.rule_a, amb.pos_a);
        let b = self.apply_rule_at(&amb.word, amb.rule_b, amb.pos_b);
        Ok((self.normal_form(&a)?, self.normal_form(&b)?))
    }

    fn apply_rule_at(&self, w: &Word, rule: usize, pos: usize) -> NCPoly {
        let r = &self.rules[rule];
        let prefix = NCPoly::from_word(Word(w.0[..pos].to_vec()));
        let suffix = NCPoly::from_word(Word(w.0[pos + r.lhs.len()..].to_vec()));
        prefix.nc_mul(&r.rhs).nc_mul(&suffix)
    }

    fn find_redex(&self, w: &Word, exclude_rule: usize) -> Option<(usize, usize)> {
        for pos in 0..w.0.len() {
            for (ri, rule) in self.rules.iter().enumerate() {
                if ri == exclude_rule {
                    continue;
                }
                let l = &rule.lhs.0;
                if pos + l.len() <= w.0.len() && &w.0[pos..pos + l.len()] == l.as_slice() {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Canonical representative of `x` in the quotient algebra.
    pub fn normal_form(&self, x: &NCPoly) -> Result<NCPoly, NcError> {
        self.normal_form_excluding(x, usize::MAX)
    }

    fn normal_form_excluding(&self, x: &NCPoly, exclude_rule: usize) -> Result<NCPoly, NcError> {
        let mut acc = NCPoly::zero();
        let mut work: BTreeMap<Word, Scalar> = x.terms.clone();
        let mut steps: u64 = 0;
        while let Some((w, c)) = work.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_redex(&w, exclude_rule) {
                None => acc.add_term(w, c),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > STEP_BUDGET {
                        return Err(NcError::BudgetExceeded);
                    }
                    let repl = self.apply_rule_at(&w, ri, pos);
                    for (w2, c2) in &repl.terms {
                        let add = c.mul(c2);
                        if add.is_zero() {
                            continue;
                        }
                        use std::collections::btree_map::Entry;
                        match work.entry(w2.clone()) {
                            Entry::Vacant(v) => {
                                v.insert(add);
                            }
                            Entry::Occupied(mut o) => {
                                let sum = o.get().add(&add);
                                if sum.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = sum;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Equality in the quotient: normal_form(x - y) == 0.
    pub fn alg_equal(&self, x: &NCPoly, y: &NCPoly) -> Result<bool, NcError> {
        Ok(self.normal_form(&x.sub(y))?.is_zero())
    }

    /// Is the word already in normal form?
    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w, usize::MAX).is_none()
    }

    /// All normal (basis) words of length <= max_len, in length-then-lex order.
    pub fn basis_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::one()];
        let mut layer = vec![Word::one()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in self.gen_ids() {
                    let mut v = w.0.clone();
                    v.push(g);
                    let w2 = Word(v);
                    if self.is_normal(&w2) {
                        next.push(w2);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Substitute scalar bindings into every relation and rebuild.
    pub fn specialize(
        &self,
        name: &str,
        bindings: &BTreeMap<Symbol, Scalar>,
    ) -> Result<Presentation, NcError> {
        let relations = self
            .relations
            .iter()
            .map(|(l, r)| Ok((l.substitute(bindings)?, r.substitute(bindings)?)))
            .collect::<Result<Vec<_>, ScalarError>>()?;
        let gens: Vec<(&str, u32)> = self
            .generators
            .iter()
            .zip(&self.weights)
            .map(|(g, w)| (g.as_str(), *w))
            .collect();
        let params: Vec<Symbol> = self
            .params
            .iter()
            .filter(|p| !bindings.contains_key(p))
            .cloned()
            .collect();
        Presentation::build(name, &gens, &params, relations, &self.central)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_one() {
            "1".to_string()
        } else {
            w.0.iter()
                .map(|g| self.gen_name(*g))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn format_poly(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut words: Vec<&Word> = p.terms.keys().collect();
        words.sort_by(|a, b| self.word_cmp(b, a));
        let mut out = String::new();
        for (i, w) in words.iter().enumerate() {
            let c = &p.terms[*w];
            let cs = format!("{c}");
            // sign-strip single-term coefficients only: for a sum, a leading
            // `-` in the display belongs to its first term, not the whole sum
            let (sign, body) = match cs.strip_prefix('-') {
                Some(stripped) if c.num_terms() == 1 => ("-", stripped.to_string()),
                _ => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let coeff_is_one = body == "1";
            let needs_parens = c.num_terms() > 1;
            if w.is_one() {
                if needs_parens {
                    out.push_str(&format!("({body})"));
                } else {
                    out.push_str(&body);
                }
            } else if coeff_is_one && !needs_parens {
                out.push_str(&self.format_word(w));
            } else if needs_parens {
                out.push_str(&format!("({body})*{}", self.format_word(w)));
            } else {
                out.push_str(&format!("{body}*{}", self.format_word(w)));
            }
        }
        out
    }
}

/// An overlap or inclusion ambiguity between two rules.
#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub word: Word,
    pub rule_a: usize,
    pub pos_a: usize,
    pub rule_b: usize,
    pub pos_b: usize,
}

fn contains_subword(hay: &Word, needle: &Word) -> bool {
    if needle.len() > hay.len() {
        return false;
    }
    (0..=hay.len() - needle.len()).any(|i| hay.0[i..i + needle.len()] == needle.0[..])
}

/// Outcome of the empirical diamond-lemma probe.
#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub presentation: String,
    pub samples: usize,
    pub max_len: usize,
    pub seed: u64,
    /// Words whose two randomized reduction orders disagreed.
    pub counterexamples: Vec<(Word, NCPoly, NCPoly)>,
    /// (ambiguity word, resolves?) for every overlap among rule lhs's.
    pub ambiguities: Vec<(Word, bool)>,
}

impl ConfluenceReport {
    pub fn all_resolved(&self) -> bool {
        self.counterexamples.is_empty() && self.ambiguities.iter().all(|(_, ok)| *ok)
    }
}

/// Reduce a polynomial by applying randomly chosen redexes until none remain.
fn reduce_random<R: Rng>(
    p: &Presentation,
    x: &NCPoly,
    rng: &mut R,
) -> Result<NCPoly, NcError> {
    let mut cur = x.clone();
    let mut steps: u64 = 0;
    loop {
        // collect all (word, pos, rule) redexes present
        let mut redexes = Vec::new();
        for (w, _) in cur.terms() {
            for pos in 0..w.0.len() {
                for (ri, rule) in p.rules.iter().enumerate() {
                    let l = &rule.lhs.0;
                    if pos + l.len() <= w.0.len() && &w.0[pos..pos + l.len()] == l.as_slice() {
                        redexes.push((w.clone(), pos, ri));
                    }
                }
            }
        }
        if redexes.is_empty() {
            return Ok(cur);
        }
        steps += 1;
        if steps > STEP_BUDGET {
            return Err(NcError::BudgetExceeded);
        }
        let (w, pos, ri) = redexes[rng.gen_range(0..redexes.len())].clone();
        let c = cur.terms.get(&w).unwrap().clone();
        cur.add_term(w.clone(), c.neg());
        let repl = p.apply_rule_at(&w, ri, pos).scale(&c);
        cur = cur.add(&repl);
    }
}

/// Empirical confluence probe: random words reduced along two independently
/// randomized orders, plus exhaustive overlap-ambiguity resolution.
pub fn confluence_probe(
    p: &Presentation,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<ConfluenceReport, NcError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for _ in 0..samples {
        let len = rng.gen_range(1..=max_len);
        let w = Word(
            (0..len)
                .map(|_| rng.gen_range(0..p.num_generators()) as GenId)
                .collect(),
        );
        let x = NCPoly::from_word(w.clone());
        let a = reduce_random(p, &x, &mut rng)?;
        let b = reduce_random(p, &x, &mut rng)?;
        if a != b {
            counterexamples.push((w, a, b));
        }
    }
    let max_lhs = p.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
    let mut ambiguities = Vec::new();
    for amb in p.overlap_ambiguities(2 * max_lhs) {
        let (a, b) = p.resolve_ambiguity(&amb)?;
        ambiguities.push((amb.word, a == b));
    }
    Ok(ConfluenceReport {
        presentation: p.name.clone(),
        samples,
        max_len,
        seed,
        counterexamples,
        ambiguities,
    })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(
                f,
                "{}",
                self.0
                    .iter()
                    .map(|g| format!("g{g}"))
                    .collect::<Vec<_>>()
                    .join("")
            )
        }
    }
}

pub type PresRef = Arc<Presentation>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations;
    use crate::text::parse_ncpoly;

    #[test]
    fn nc_mul_bilinearity() {
        let ar = presentations::builtin(presentations::Builtin::AR).unwrap();
        let x = parse_ncpoly("a + b", &ar).unwrap();
        let y = parse_ncpoly("c", &ar).unwrap();
        let expect = parse_ncpoly("a*c + b*c", &ar).unwrap();
        assert_eq!(x.nc_mul(&y), expect);
        let one = NCPoly::one();
        assert_eq!(one.nc_mul(&x), x);
        assert_eq!(
            parse_ncpoly("a", &ar).unwrap().nc_mul(&parse_ncpoly("b", &ar).unwrap()),
            parse_ncpoly("a*b", &ar).unwrap()
        );
    }

    #[test]
    fn simple_rule_set_probe() {
        // single rules ba -> ab, ca -> 2ac: disjoint overlaps agree
        let gens = [("a", 1), ("b", 1), ("c", 1)];
        let rel1 = (
            parse_raw("b*a", &["a", "b", "c"]),
            parse_raw("a*b", &["a", "b", "c"]),
        );
        let rel2 = (
            parse_raw("c*a", &["a", "b", "c"]),
            parse_raw("2*a*c", &["a", "b", "c"]),
        );
        let p = Presentation::build("toy", &gens, &[], vec![rel1, rel2], &[]).unwrap();
        let rep = confluence_probe(&p, 200, 4, 1).unwrap();
        assert!(rep.all_resolved());
        let cba = parse_raw("c*b*a", &["a", "b", "c"]);
        let nf = p.normal_form(&cba).unwrap();
        assert_eq!(nf, parse_raw("2*a*c*b", &["a", "b", "c"]));
    }

    #[test]
    fn inconsistent_rule_set_detected() {
        // {ba -> ab, ba -> 2ab} forces ab = 2ab, i.e. ab = 0... the pair
        // reduces to a rule killing ab; the probe sees no surviving
        // counterexample, but orientation flags the degenerate relation.
        let gens = [("a", 1), ("b", 1)];
        let rel1 = (parse_raw("b*a", &["a", "b"]), parse_raw("a*b", &["a", "b"]));
        let rel2 = (
            parse_raw("b*a", &["a", "b"]),
            parse_raw("2*a*b", &["a", "b"]),
        );
        let p = Presentation::build("bad", &gens, &[], vec![rel1, rel2], &[]).unwrap();
        // orientation resolved the clash by adding ab -> 0
        let ab = parse_raw("a*b", &["a", "b"]);
        assert!(p.normal_form(&ab).unwrap().is_zero());
        assert!(p.rules.iter().any(|r| r.rhs.is_zero()));
    }

    fn parse_raw(s: &str, gens: &[&str]) -> NCPoly {
        let pres = Presentation {
            name: "tmp".into(),
            generators: gens.iter().map(|g| g.to_string()).collect(),
            weights: vec![1; gens.len()],
            params: vec![],
            relations: vec![],
            central: vec![],
            rules: vec![],
            completion_added: vec![],
        };
        parse_ncpoly(s, &pres).unwrap()
    }
}
