//! Normal forms in finitely presented algebras.
//!
//! A [`RewriteSystem`] is a list of oriented rules `lhs -> rhs` where every
//! word of `rhs` is smaller than `lhs` in the degree-lexicographic order.
//! Reduction therefore terminates. Confluence is only ever certified up to a
//! word length: [`complete`] adds oriented differences of divergent overlap
//! reductions until every overlap of length `<= d` resolves.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, Word};
use crate::scalars::CScalar;

/// Default word-length bound for completion.
pub const DEFAULT_COMPLETION_DEGREE: usize = 4;
/// Default cap on the number of rules produced by completion.
pub const DEFAULT_RULE_CAP: usize = 500;

/// Monomial order on words. Generators are ranked by their alphabet index,
/// so presentations store their alphabet in increasing generator order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    #[default]
    DegLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        a.cmp(b)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl RewriteRule {
    /// Orients a nonzero polynomial on its leading word.
    pub fn orient(p: &NCPoly) -> Option<RewriteRule> {
        let (lw, lc) = p.leading()?;
        let inv = lc.inv().expect("leading coefficient is nonzero");
        let mut rhs = p.scale(&-&inv);
        rhs.add_term(lw.clone(), CScalar::one());
        Some(RewriteRule { lhs: lw.clone(), rhs })
    }

    /// `lhs - rhs`, the relation this rule encodes.
    pub fn as_relation(&self) -> NCPoly {
        &NCPoly::monomial(self.lhs.clone()) - &self.rhs
    }
}

/// An overlap ambiguity whose two one-step reductions do not agree.
#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub word: Word,
    /// `nf(rhs1 * suffix) - nf(prefix * rhs2)`.
    pub difference: NCPoly,
}

/// Budget for [`complete`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionConfig {
    pub degree: usize,
    pub rule_cap: usize,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig { degree: DEFAULT_COMPLETION_DEGREE, rule_cap: DEFAULT_RULE_CAP }
    }
}

#[derive(Debug)]
pub struct RewriteSystem {
    ngens: usize,
    rules: Vec<RewriteRule>,
    index: HashMap<Word, usize>,
    lhs_lens: Vec<usize>,
    pub order: MonomialOrder,
    completion_degree: usize,
    certified_degree: Option<usize>,
    cache: RwLock<HashMap<Word, Arc<NCPoly>>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        let mut rs = RewriteSystem::from_rules(self.ngens, self.rules.clone());
        rs.completion_degree = self.completion_degree;
        rs.certified_degree = self.certified_degree;
        rs
    }
}

impl RewriteSystem {
    /// A system with no rules (the free algebra).
    pub fn empty(ngens: usize) -> Self {
        Self::from_rules(ngens, Vec::new())
    }

    /// Wraps already-oriented rules. Rules whose left side contains another
    /// left side are kept; reduction always uses the leftmost match.
    pub fn from_rules(ngens: usize, rules: Vec<RewriteRule>) -> Self {
        let mut rs = RewriteSystem {
            ngens,
            rules,
            index: HashMap::new(),
            lhs_lens: Vec::new(),
            order: MonomialOrder::DegLex,
            completion_degree: 0,
            certified_degree: None,
            cache: RwLock::new(HashMap::new()),
        };
        rs.reindex();
        rs
    }

    /// Orients each relation on its leading word, without completion.
    pub fn from_relations(ngens: usize, relations: &[NCPoly]) -> Self {
        let mut rs = Self::empty(ngens);
        let mut queue: Vec<NCPoly> = relations.iter().rev().cloned().collect();
        absorb(&mut rs, &mut queue, usize::MAX).expect("no cap");
        rs
    }

    fn reindex(&mut self) {
        self.index = self.rules.iter().enumerate().map(|(i, r)| (r.lhs.clone(), i)).collect();
        let mut lens: Vec<usize> = self.rules.iter().map(|r| r.lhs.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        self.lhs_lens = lens;
        self.cache.write().unwrap().clear();
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Word length up to which completion was requested.
    pub fn completion_degree(&self) -> usize {
        self.completion_degree
    }

    /// Word length up to which all overlaps were checked to resolve.
    pub fn certified_degree(&self) -> Option<usize> {
        self.certified_degree
    }

    /// Leftmost occurrence of a rule left side in `w`.
    fn find(&self, w: &[u8]) -> Option<(usize, usize)> {
        for pos in 0..=w.len() {
            for &l in &self.lhs_lens {
                if pos + l > w.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&w[pos..pos + l]) {
                    return Some((pos, r));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find(w.letters()).is_none()
    }

    /// Reduces `x` until no word contains a rule left side.
    pub fn normal_form(&self, x: &NCPoly) -> NCPoly {
        let mut pending: BTreeMap<Word, CScalar> = BTreeMap::new();
        for (w, c) in x.terms() {
            pending.insert(w.clone(), c.clone());
        }
        let mut out = NCPoly::zero();
        while let Some((w, c)) = pending.pop_last() {
            if let Some(hit) = self.cache.read().unwrap().get(&w) {
                out.add_scaled(hit, &c);
                continue;
            }
            match self.find(w.letters()) {
                None => out.add_term(w, c),
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    for (m, a) in rule.rhs.terms() {
                        let nw = w.splice(pos, rule.lhs.len(), m);
                        let coeff = a * &c;
                        let slot = pending.entry(nw.clone()).or_default();
                        *slot = &*slot + &coeff;
                        if slot.is_zero() {
                            pending.remove(&nw);
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal form of a single word, memoized.
    pub fn normal_form_word(&self, w: &Word) -> Arc<NCPoly> {
        if let Some(hit) = self.cache.read().unwrap().get(w) {
            return hit.clone();
        }
        let nf = Arc::new(self.normal_form(&NCPoly::monomial(w.clone())));
        self.cache.write().unwrap().insert(w.clone(), nf.clone());
        nf
    }

    /// Normal form of `u * v` for normal words.
    pub fn mul_words(&self, u: &Word, v: &Word) -> Arc<NCPoly> {
        self.normal_form_word(&u.concat(v))
    }

    /// Reduced product of two polynomials.
    pub fn mul(&self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                out.add_scaled(&self.mul_words(u, v), &(a * b));
            }
        }
        out
    }

    /// Adds a rule and removes rules it makes reducible, pushing their
    /// relations onto `requeue`.
    fn insert_interreduced(&mut self, rule: RewriteRule, requeue: &mut Vec<NCPoly>) {
        let lhs = rule.lhs.clone();
        let mut kept = Vec::with_capacity(self.rules.len() + 1);
        for r in self.rules.drain(..) {
            if contains_factor(r.lhs.letters(), lhs.letters()) {
                requeue.push(r.as_relation());
            } else {
                kept.push(r);
            }
        }
        kept.push(rule);
        self.rules = kept;
        self.reindex();
    }

    /// Replaces every right side by its normal form.
    fn normalize_rhs(&mut self) {
        for k in 0..self.rules.len() {
            let rhs = self.normal_form(&self.rules[k].rhs);
            self.rules[k].rhs = rhs;
            self.cache.write().unwrap().clear();
        }
        self.rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        self.reindex();
    }

    /// Overlap words `lhs1 + lhs2[k..]` of length `<= d`, with the two
    /// one-step reductions of each.
    fn overlaps(&self, d: usize) -> Vec<(usize, usize, usize, Word, NCPoly, NCPoly)> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            let l1 = r1.lhs.letters();
            for (j, r2) in self.rules.iter().enumerate() {
                let l2 = r2.lhs.letters();
                for k in 1..l1.len().min(l2.len()) {
                    if l1.len() + l2.len() - k > d {
                        continue;
                    }
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let suffix = Word::from_slice(&l2[k..]);
                    let prefix = Word::from_slice(&l1[..l1.len() - k]);
                    let word = r1.lhs.concat(&suffix);
                    let a = r1.rhs.sandwich(&Word::empty(), &suffix);
                    let b = r2.rhs.sandwich(&prefix, &Word::empty());
                    out.push((i, j, k, word, a, b));
                }
                // Inclusion ambiguities only occur in systems that were not
                // inter-reduced, e.g. two rules with the same left side.
                if i != j && l2.len() <= l1.len() && l1.len() <= d {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] == *l2 {
                            let u = Word::from_slice(&l1[..p]);
                            let v = Word::from_slice(&l1[p + l2.len()..]);
                            let b = r2.rhs.sandwich(&u, &v);
                            out.push((i, j, 0, r1.lhs.clone(), r1.rhs.clone(), b));
                        }
                    }
                }
            }
        }
        out
    }
}

fn contains_factor(hay: &[u8], needle: &[u8]) -> bool {
    if needle.len() > hay.len() {
        return false;
    }
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// All overlap ambiguities of length `<= d` whose reductions disagree.
/// An empty result certifies local confluence on words of length `<= d`.
pub fn check_overlaps(rs: &RewriteSystem, d: usize) -> Vec<Obstruction> {
    let mut out = Vec::new();
    for (_, _, _, word, a, b) in rs.overlaps(d) {
        let diff = &rs.normal_form(&a) - &rs.normal_form(&b);
        if !diff.is_zero() {
            out.push(Obstruction { word, difference: diff });
        }
    }
    out
}

/// Degree-bounded completion starting from the rules of `rs`.
pub fn complete(rs: &RewriteSystem, config: CompletionConfig) -> Result<RewriteSystem> {
    let relations: Vec<NCPoly> = rs.rules().iter().map(RewriteRule::as_relation).collect();
    complete_relations(rs.ngens(), &relations, config)
}

/// Degree-bounded completion of the ideal generated by `relations`.
pub fn complete_relations(ngens: usize, relations: &[NCPoly], config: CompletionConfig) -> Result<RewriteSystem> {
    let mut rs = RewriteSystem::empty(ngens);
    let mut queue: Vec<NCPoly> = relations.iter().rev().cloned().collect();
    // Rule identity is its (lhs, rhs) pair; rules never change in place
    // during completion, so checked overlaps stay checked.
    let mut checked: HashSet<(Word, Word, usize)> = HashSet::new();
    let mut full_pass_clean = false;
    while !full_pass_clean {
        loop {
            absorb(&mut rs, &mut queue, config.rule_cap)?;
            let mut found = false;
            for (i, j, k, word, a, b) in rs.overlaps(config.degree) {
                let key = (rs.rules[i].lhs.clone(), rs.rules[j].lhs.clone(), k);
                if checked.contains(&key) {
                    continue;
                }
                let diff = &rs.normal_form(&a) - &rs.normal_form(&b);
                if diff.is_zero() {
                    checked.insert(key);
                } else {
                    let _ = word;
                    queue.push(diff);
                    found = true;
                }
            }
            if !found {
                break;
            }
        }
        let obstructions = check_overlaps(&rs, config.degree);
        full_pass_clean = obstructions.is_empty();
        queue.extend(obstructions.into_iter().map(|o| o.difference));
        if !full_pass_clean {
            checked.clear();
        }
    }
    rs.normalize_rhs();
    rs.completion_degree = config.degree;
    rs.certified_degree = Some(config.degree);
    Ok(rs)
}

fn absorb(rs: &mut RewriteSystem, queue: &mut Vec<NCPoly>, cap: usize) -> Result<()> {
    while let Some(p) = queue.pop() {
        let r = rs.normal_form(&p);
        if let Some(rule) = RewriteRule::orient(&r) {
            rs.insert_interreduced(rule, queue);
            if rs.len() > cap {
                return Err(Error::BudgetExceeded { rules: rs.len(), cap });
            }
        }
    }
    Ok(())
}

/// All normal words of length `<= d`, in increasing monomial order.
pub fn word_basis(rs: &RewriteSystem, d: usize) -> Result<Vec<Word>> {
    let certified = rs.certified_degree().unwrap_or(0);
    if certified < d && !check_overlaps(rs, d).is_empty() {
        return Err(Error::ConfluenceNotCertified { needed: d, have: certified });
    }
    Ok(normal_words(rs, d))
}

/// Normal words of length `<= d` without any confluence check.
pub fn normal_words(rs: &RewriteSystem, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if !rs.is_normal(&Word::empty()) {
        return out;
    }
    let mut layer = vec![Word::empty()];
    out.push(Word::empty());
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rs.ngens() {
                let mut nw = w.clone();
                nw.push(g);
                // Only suffixes can newly match.
                if suffix_normal(rs, nw.letters()) {
                    next.push(nw);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

fn suffix_normal(rs: &RewriteSystem, w: &[u8]) -> bool {
    rs.lhs_lens.iter().all(|&l| l > w.len() || !rs.index.contains_key(&w[w.len() - l..]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Alphabet;
    use crate::parse::parse_expr;

    fn system(names: &[&str], rels: &[&str], d: usize) -> (Alphabet, RewriteSystem) {
        let a = Alphabet::new(names).unwrap();
        let polys: Vec<NCPoly> = rels.iter().map(|r| parse_expr(r, &a).unwrap()).collect();
        let rs = complete_relations(a.len(), &polys, CompletionConfig { degree: d, rule_cap: 500 }).unwrap();
        (a, rs)
    }

    #[test]
    fn quantum_plane_commutation() {
        let (a, rs) = system(&["x", "y"], &["y*x - q*x*y"], 4);
        let nf = rs.normal_form(&parse_expr("y*x*x", &a).unwrap());
        assert_eq!(nf, parse_expr("q^2*x*x*y", &a).unwrap());
        assert_eq!(rs.normal_form(&NCPoly::one()), NCPoly::one());
    }

    #[test]
    fn inconsistent_pair_is_an_obstruction() {
        let a = Alphabet::new(&["a", "b"]).unwrap();
        let ba = Word::from_letters(&[1, 0]);
        let rs = RewriteSystem::from_rules(
            2,
            vec![
                RewriteRule { lhs: ba.clone(), rhs: parse_expr("a*b", &a).unwrap() },
                RewriteRule { lhs: ba, rhs: parse_expr("2*a*b", &a).unwrap() },
            ],
        );
        let obs = check_overlaps(&rs, 2);
        assert!(!obs.is_empty());
        assert_eq!(obs[0].word, Word::from_letters(&[1, 0]));
    }

    #[test]
    fn empty_system() {
        let rs = RewriteSystem::empty(3);
        assert!(check_overlaps(&rs, 4).is_empty());
        let c = complete(&rs, CompletionConfig::default()).unwrap();
        assert!(c.is_empty());
        assert_eq!(word_basis(&c, 0).unwrap(), vec![Word::empty()]);
    }

    #[test]
    fn completion_discovers_collapse() {
        // a*b = 1 and b*a = 0 force 1 = a*b*a*b ... = 0? no: a = a*(b*a) = 0.
        let (a, rs) = system(&["a", "b"], &["a*b - 1", "b*a"], 4);
        assert!(rs.normal_form(&parse_expr("a", &a).unwrap()).is_zero());
        assert!(rs.normal_form(&NCPoly::one()).is_zero());
    }

    #[test]
    fn budget_is_enforced() {
        // The braid relation has no finite deglex completion.
        let a = Alphabet::new(&["x", "y"]).unwrap();
        let rels = vec![parse_expr("y*x*y - x*y*x", &a).unwrap()];
        let err = complete_relations(2, &rels, CompletionConfig { degree: 12, rule_cap: 3 });
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }
}
