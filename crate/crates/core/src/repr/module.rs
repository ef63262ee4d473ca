//! Truncated highest-weight modules and their simple quotients.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::linalg::Matrix;
use crate::cartan::RootVector;
use crate::error::{Error, Result};
use crate::presentation::{AlgebraElement, GenType, Letter, Presentation, Word};
use crate::qscalar::QScalar;
use crate::report::{CheckRecord, Status};

/// How `J^{m-1}` acts on a simple module: identity or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Unit,
    Null,
}

/// A finite truncation of the simple quotient of a highest-weight module.
#[derive(Debug, Clone)]
pub struct WeightModule {
    /// F-word labels of the basis vectors (applied to the highest vector).
    pub labels: Vec<Word>,
    pub drops: Vec<RootVector>,
    pub actions: BTreeMap<Letter, Matrix>,
    pub lambda: Vec<QScalar>,
    pub sector: Sector,
    pub gamma: QScalar,
    pub height: usize,
    /// No basis vector survives one level above `height`, so the
    /// truncation is the whole simple module.
    pub complete: bool,
    pub m: i64,
}

type SparseVec = BTreeMap<usize, QScalar>;

fn add_into(acc: &mut SparseVec, v: &SparseVec, c: &QScalar) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(QScalar::zero);
        *e = &*e + &(x * c);
    }
    acc.retain(|_, x| !x.is_zero());
}

struct Verma<'a> {
    p: &'a Presentation,
    lambda: &'a [QScalar],
    lambda_inv: Vec<QScalar>,
    sector: Sector,
    gamma: QScalar,
    words: Vec<Word>,
    drops: Vec<RootVector>,
    index: HashMap<Word, usize>,
}

impl<'a> Verma<'a> {
    fn new(p: &'a Presentation, lambda: &'a [QScalar], sector: Sector, gamma: QScalar, top: usize) -> Result<Self> {
        let n = p.rank();
        let lambda_inv = match sector {
            Sector::Unit => lambda.iter().map(QScalar::inverse).collect::<Result<_>>()?,
            Sector::Null => vec![QScalar::zero(); n],
        };
        let mut v = Verma { p, lambda, lambda_inv, sector, gamma, words: vec![], drops: vec![], index: HashMap::new() };
        v.push(Word::empty(), RootVector::zero(n));
        let mut level = vec![0usize];
        for _ in 0..top {
            let mut next = Vec::new();
            for &k in &level {
                for i in 0..n {
                    let f = Letter::F(i as u8);
                    if sector == Sector::Null && p.type_of(f) == Some(GenType::Zero) {
                        continue;
                    }
                    let cand = v.words[k].concat(&Word::letter(f));
                    let r = p.reduce(&AlgebraElement::from_word(cand.clone()))?;
                    if r == AlgebraElement::from_word(cand.clone()) {
                        let mut d = v.drops[k].clone();
                        d.add_assign_scaled(i, 1);
                        next.push(v.push(cand, d));
                    }
                }
            }
            level = next;
        }
        Ok(v)
    }

    fn push(&mut self, w: Word, d: RootVector) -> usize {
        let k = self.words.len();
        self.index.insert(w.clone(), k);
        self.words.push(w);
        self.drops.push(d);
        k
    }

    /// Expresses a reduced word applied to the highest vector in the basis.
    fn eval_word(&self, w: &Word, out: &mut SparseVec, c: &QScalar) -> Result<()> {
        let mut scalar = c.clone();
        let mut fs = Vec::new();
        for &l in &w.0 {
            match l {
                Letter::E(_) => return Ok(()),
                Letter::F(_) => {
                    if self.sector == Sector::Null && self.p.type_of(l) == Some(GenType::Zero) {
                        return Ok(());
                    }
                    fs.push(l);
                }
                Letter::J => match self.sector {
                    Sector::Unit => scalar = &scalar * &self.gamma,
                    Sector::Null => return Ok(()),
                },
                Letter::K(i) => scalar = &scalar * &self.lambda[i as usize],
                Letter::Kb(i) => scalar = &scalar * &self.lambda_inv[i as usize],
                Letter::D(_) | Letter::Db(_) => {
                    if self.sector == Sector::Null {
                        return Ok(());
                    }
                }
            }
        }
        let fw = self.p.reduce(&AlgebraElement::from_word(Word(fs)))?;
        for (u, d) in fw.terms() {
            let k = *self
                .index
                .get(u)
                .ok_or_else(|| Error::NotApplicable(format!("basis word {u} beyond the truncation")))?;
            add_into(out, &BTreeMap::from([(k, d.clone())]), &scalar);
        }
        Ok(())
    }

    /// `x · (basis vector k)`.
    fn act(&self, x: &AlgebraElement, k: usize) -> Result<SparseVec> {
        let r = self.p.reduce(&x.concat(&AlgebraElement::from_word(self.words[k].clone())))?;
        let mut out = SparseVec::new();
        for (w, c) in r.terms() {
            self.eval_word(w, &mut out, c)?;
        }
        Ok(out)
    }
}

/// Builds the simple quotient of the highest-weight module with
/// `K_i v = λ_i v`, truncated at height `n`.
pub fn build_highest_weight_module(
    p: &Presentation,
    lambda: &[QScalar],
    sector: Sector,
    gamma: QScalar,
    n: usize,
) -> Result<WeightModule> {
    let rank = p.rank();
    if lambda.len() != rank {
        return Err(Error::IndexOutOfRange { index: lambda.len(), rank });
    }
    let gamma = match sector {
        Sector::Unit => {
            if let Some(i) = lambda.iter().position(QScalar::is_zero) {
                return Err(Error::SectorMismatch(format!("lambda_{i} = 0 but J^(m-1) acts as the identity")));
            }
            if !gamma.pow(p.m() - 1)?.is_one() {
                return Err(Error::GammaNotRoot(format!("{gamma} is not a root of x^{} = 1", p.m() - 1)));
            }
            gamma
        }
        Sector::Null => {
            if let Some(i) = lambda.iter().position(|l| !l.is_zero()) {
                return Err(Error::SectorMismatch(format!("lambda_{i} != 0 but J^(m-1) acts as zero")));
            }
            QScalar::zero()
        }
    };
    let verma = Verma::new(p, lambda, sector, gamma.clone(), n + 1)?;

    let mut by_drop: BTreeMap<(i64, RootVector), Vec<usize>> = BTreeMap::new();
    for (k, d) in verma.drops.iter().enumerate() {
        by_drop.entry((d.height().unwrap(), d.clone())).or_default().push(k);
    }
    let local: HashMap<usize, usize> =
        by_drop.values().flat_map(|ks| ks.iter().enumerate().map(|(j, &k)| (k, j))).collect();

    // Row space whose kernel is the radical, per weight.
    let mut quot: BTreeMap<RootVector, (Matrix, Vec<usize>)> = BTreeMap::new();
    for ((h, beta), ks) in &by_drop {
        let dim = ks.len();
        if *h == 0 {
            quot.insert(beta.clone(), Matrix::identity(1).rref());
            continue;
        }
        let mut stack = Matrix::zeros(0, dim);
        for i in 0..rank {
            if beta.0[i] == 0 {
                continue;
            }
            let mut lower = beta.clone();
            lower.add_assign_scaled(i, -1);
            let Some((r, _)) = quot.get(&lower) else { continue };
            if r.rows() == 0 {
                continue;
            }
            let ldim = r.cols();
            let mut e = Matrix::zeros(ldim, dim);
            let ei = AlgebraElement::letter(Letter::E(i as u8));
            for (col, &k) in ks.iter().enumerate() {
                for (t, c) in verma.act(&ei, k)? {
                    e.set(local[&t], col, c);
                }
            }
            stack = stack.vstack(&r.mul(&e));
        }
        quot.insert(beta.clone(), stack.rref());
    }

    let mut labels = Vec::new();
    let mut drops = Vec::new();
    let mut section = Vec::new();
    let mut offset: BTreeMap<RootVector, usize> = BTreeMap::new();
    let mut complete = true;
    for ((h, beta), ks) in &by_drop {
        let (_, piv) = &quot[beta];
        if *h as usize > n {
            complete &= piv.is_empty();
            continue;
        }
        offset.insert(beta.clone(), labels.len());
        for &c in piv {
            labels.push(verma.words[ks[c]].clone());
            drops.push(beta.clone());
            section.push(ks[c]);
        }
    }

    let dim = labels.len();
    let mut actions = BTreeMap::new();
    for l in p.generators() {
        let x = AlgebraElement::letter(l);
        let mut mat = Matrix::zeros(dim, dim);
        for (col, &k) in section.iter().enumerate() {
            let v = verma.act(&x, k)?;
            let mut by_target: BTreeMap<RootVector, Vec<(usize, QScalar)>> = BTreeMap::new();
            for (t, c) in v {
                by_target.entry(verma.drops[t].clone()).or_default().push((local[&t], c));
            }
            for (beta, entries) in by_target {
                let Some(&off) = offset.get(&beta) else { continue };
                let (r, _) = &quot[&beta];
                for row in 0..r.rows() {
                    let mut s = QScalar::zero();
                    for (j, c) in &entries {
                        let a = r.get(row, *j);
                        if !a.is_zero() {
                            s = &s + &(a * c);
                        }
                    }
                    if !s.is_zero() {
                        mat.set(off + row, col, s);
                    }
                }
            }
        }
        actions.insert(l, mat);
    }

    Ok(WeightModule { labels, drops, actions, lambda: lambda.to_vec(), sector, gamma, height: n, complete, m: p.m() })
}

/// `(1/(m-1)) (J + J^2 + ... + J^{m-1})`.
pub fn averaging_idempotent(p: &Presentation) -> AlgebraElement {
    let m = p.m();
    let c = QScalar::from_rational(&num_rational::BigRational::new(1.into(), (m - 1).into()));
    let mut e = AlgebraElement::zero();
    for r in 1..m {
        e.add_term(Word::j_pow(r as usize), &c);
    }
    e
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn action(&self, l: Letter) -> &Matrix {
        &self.actions[&l]
    }

    pub fn word_matrix(&self, w: &Word) -> Matrix {
        w.0.iter().fold(Matrix::identity(self.dim()), |acc, l| acc.mul(self.action(*l)))
    }

    pub fn element_matrix(&self, x: &AlgebraElement) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (w, c) in x.terms() {
            out.add_scaled(&self.word_matrix(w), c);
        }
        out
    }

    /// Dimension of each weight space, keyed by the drop below the highest weight.
    pub fn weight_multiplicities(&self) -> BTreeMap<RootVector, usize> {
        let mut out = BTreeMap::new();
        for d in &self.drops {
            *out.entry(d.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Diagonal of a torus action (torus letters act diagonally on this basis).
    pub fn eigenvalues(&self, l: Letter) -> Vec<QScalar> {
        self.action(l).diagonal()
    }

    /// Every defining relation acts as zero. Skipped on incomplete truncations.
    pub fn relation_check(&self, p: &Presentation) -> Vec<CheckRecord> {
        p.rules()
            .iter()
            .map(|r| {
                let id = format!("module-relation:{}", r.name());
                if !self.complete {
                    return CheckRecord::new(id, r.kind.anchor(), Status::Skip, Some("truncation incomplete".into()));
                }
                let start = Instant::now();
                let d = self.element_matrix(&r.relation_element());
                CheckRecord::outcome(id, r.kind.anchor(), d.is_zero(), true, (!d.is_zero()).then(|| format!("{d:?}")))
                    .timed(start)
            })
            .collect()
    }

    /// Whether `e` commutes with every E and F on this module.
    pub fn e_commutes(&self, p: &Presentation) -> bool {
        let e = self.element_matrix(&averaging_idempotent(p));
        p.generators()
            .into_iter()
            .filter(|l| l.is_ef())
            .all(|l| self.action(l).mul(&e) == e.mul(self.action(l)))
    }
}

/// The sector dichotomy and the inverse relation between `K_i` and `Kb_i`.
pub fn sector_check(md: &WeightModule) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let n = md.dim();
    let jm1 = md.word_matrix(&Word::j_pow((md.m - 1) as usize));
    let idem = jm1.mul(&jm1) == jm1;
    let dichotomy = jm1.is_identity() || jm1.is_zero();
    out.push(CheckRecord::outcome("sector:J^(m-1)-idempotent", "J^(m-1) idempotent on V", idem, true, None));
    let sector_ok = match md.sector {
        Sector::Unit => jm1.is_identity(),
        Sector::Null => jm1.is_zero(),
    };
    out.push(CheckRecord::outcome(
        "sector:dichotomy",
        "J^(m-1) acts as identity or zero",
        dichotomy && sector_ok,
        true,
        (!sector_ok).then(|| format!("{jm1:?}")),
    ));
    for (i, lam) in md.lambda.iter().enumerate() {
        let k = md.action(Letter::K(i as u8));
        let kb = md.action(Letter::Kb(i as u8));
        let ok = match md.sector {
            Sector::Unit => {
                let top = kb.get(0, 0).clone();
                k.mul(kb).is_identity() && top == lam.inverse().unwrap_or_else(|_| QScalar::zero())
            }
            Sector::Null => k.is_zero() && kb.is_zero() && n > 0,
        };
        out.push(CheckRecord::outcome(format!("sector:Kb{i}-eigenvalue"), "Kb eigenvalue is inverse of K or zero", ok, true, None));
    }
    if md.sector == Sector::Null {
        let torus_zero = md.actions.iter().filter(|(l, _)| l.is_torus() || **l == Letter::J).all(|(_, m)| m.is_zero());
        out.push(CheckRecord::outcome("sector:null-torus-zero", "torus and J act as zero", torus_zero, true, None));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_datum;
    use crate::presentation::TypeTable;

    fn sl2(m: i64) -> Presentation {
        Presentation::build(&validate_datum(&[vec![2]], &[1]).unwrap(), &TypeTable::all_one(1), m).unwrap()
    }

    #[test]
    fn sl2_three_dimensional() {
        let p = sl2(3);
        let md = build_highest_weight_module(&p, &[QScalar::q_pow(2)], Sector::Unit, QScalar::one(), 5).unwrap();
        assert_eq!(md.dim(), 3);
        assert!(md.complete);
        assert_eq!(md.eigenvalues(Letter::K(0)), vec![QScalar::q_pow(2), QScalar::one(), QScalar::q_pow(-2)]);
        assert_eq!(md.eigenvalues(Letter::Kb(0)), vec![QScalar::q_pow(-2), QScalar::one(), QScalar::q_pow(2)]);
        assert!(md.relation_check(&p).iter().all(|r| r.status == Status::Pass));
        assert!(sector_check(&md).iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn null_sector_is_one_dimensional() {
        let p = sl2(3);
        let md = build_highest_weight_module(&p, &[QScalar::zero()], Sector::Null, QScalar::zero(), 4).unwrap();
        assert_eq!(md.dim(), 1);
        assert!(md.actions.values().all(Matrix::is_zero));
        assert!(md.relation_check(&p).iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn sector_mismatch() {
        let p = sl2(3);
        let err = build_highest_weight_module(&p, &[QScalar::zero()], Sector::Unit, QScalar::one(), 3).unwrap_err();
        assert!(matches!(err, Error::SectorMismatch(_)));
        let err = build_highest_weight_module(&p, &[QScalar::one()], Sector::Unit, QScalar::from_int(2), 3).unwrap_err();
        assert!(matches!(err, Error::GammaNotRoot(_)));
    }

    #[test]
    fn idempotent_e() {
        for m in 2..=5 {
            let p = sl2(m);
            let e = averaging_idempotent(&p);
            assert!(p.is_zero(&(&p.multiply(&e, &e).unwrap() - &e)).unwrap());
            assert!(p.is_zero(&(&p.multiply(&p.j_idempotent(), &e).unwrap() - &e)).unwrap());
        }
        assert_eq!(averaging_idempotent(&sl2(2)), AlgebraElement::letter(Letter::J));
    }
}
