//! Words, algebra elements and the oriented rewriting system for the weak
//! quantized enveloping algebra.
//!
//! Canonical words have the shape
//! `[J^a] X_1 [J^b] X_2 ... X_k [J^c] T_1 ... T_l [J^{m-1}]`: E/F letters
//! straightened (F before E, Serre leading words removed), torus letters
//! sorted into a commutative block at the right end, inner J-runs shorter
//! than `m-1`, and a trailing central `J^{m-1}` only when no letter in the
//! word absorbs it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cartan::BorcherdsCartanDatum;
use crate::error::{Error, Result};
use crate::qscalar::{quantum_binomial, QScalar};

/// Default ceiling on rewrite steps per reduction.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// Default ceiling on the number of E/F letters in a word.
pub const DEFAULT_MAX_DEGREE: usize = 12;

/// A generator of the algebra. The derived order is the fixed generator
/// order used for straightening: `F_0 < F_1 < ... < E_0 < E_1 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    F(u8),
    E(u8),
    K(u8),
    Kb(u8),
    D(u8),
    Db(u8),
    J,
}

impl Letter {
    pub fn index(self) -> Option<usize> {
        match self {
            Letter::E(i) | Letter::F(i) | Letter::K(i) | Letter::Kb(i) | Letter::D(i) | Letter::Db(i) => {
                Some(i as usize)
            }
            Letter::J => None,
        }
    }

    pub fn is_ef(self) -> bool {
        matches!(self, Letter::E(_) | Letter::F(_))
    }

    pub fn is_torus(self) -> bool {
        matches!(self, Letter::K(_) | Letter::Kb(_) | Letter::D(_) | Letter::Db(_))
    }

    /// Sort key of torus letters inside the commutative block:
    /// `K_0 < Kb_0 < K_1 < Kb_1 < ... < D_0 < Db_0 < ...`.
    fn torus_key(self) -> (u8, u8, u8) {
        match self {
            Letter::K(i) => (0, i, 0),
            Letter::Kb(i) => (0, i, 1),
            Letter::D(i) => (1, i, 0),
            Letter::Db(i) => (1, i, 1),
            _ => unreachable!("not a torus letter"),
        }
    }

    /// The torus letter paired with this one to give `J^{m-1}`.
    pub fn torus_partner(self) -> Option<Letter> {
        match self {
            Letter::K(i) => Some(Letter::Kb(i)),
            Letter::Kb(i) => Some(Letter::K(i)),
            Letter::D(i) => Some(Letter::Db(i)),
            Letter::Db(i) => Some(Letter::D(i)),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "E{i}"),
            Letter::F(i) => write!(f, "F{i}"),
            Letter::K(i) => write!(f, "K{i}"),
            Letter::Kb(i) => write!(f, "Kb{i}"),
            Letter::D(i) => write!(f, "D{i}"),
            Letter::Db(i) => write!(f, "Db{i}"),
            Letter::J => write!(f, "J"),
        }
    }
}

/// Type flag of an E or F generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenType {
    One,
    Zero,
}

impl fmt::Display for GenType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenType::One => "one",
            GenType::Zero => "zero",
        })
    }
}

/// Per-index type flags for the E and F generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeTable {
    pub e: Vec<GenType>,
    pub f: Vec<GenType>,
}

impl TypeTable {
    pub fn all_one(n: usize) -> Self {
        TypeTable { e: vec![GenType::One; n], f: vec![GenType::One; n] }
    }

    /// Every assignment of {one, zero} to the 2n generators E_i, F_i.
    pub fn enumerate(n: usize) -> Vec<TypeTable> {
        (0..1u32 << (2 * n))
            .map(|mask| {
                let flag = |b: usize| if mask >> b & 1 == 1 { GenType::Zero } else { GenType::One };
                TypeTable { e: (0..n).map(flag).collect(), f: (n..2 * n).map(flag).collect() }
            })
            .collect()
    }
}

impl fmt::Display for TypeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = |t: &GenType| if *t == GenType::One { '1' } else { '0' };
        let e: String = self.e.iter().map(code).collect();
        let fs: String = self.f.iter().map(code).collect();
        write!(f, "E:{e}/F:{fs}")
    }
}

/// A finite sequence of generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn j_pow(k: usize) -> Self {
        Word(vec![Letter::J; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of E and F letters.
    pub fn degree(&self) -> usize {
        self.0.iter().filter(|l| l.is_ef()).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut k = 0;
        let mut first = true;
        while k < self.0.len() {
            let l = self.0[k];
            let run = self.0[k..].iter().take_while(|&&x| x == l).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// A finite linear combination of words with scalar coefficients.
#[derive(Clone, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, QScalar>,
    reduced: bool,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, QScalar::one())
    }

    pub fn letter(l: Letter) -> Self {
        Self::from_word(Word::letter(l))
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: QScalar) -> Self {
        let mut e = AlgebraElement::zero();
        e.add_term(w, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    /// If the element is `c * 1`, returns `c`.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        self.reduced = false;
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &QScalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_scaled(self, c);
        out.reduced = self.reduced && !c.is_zero();
        out
    }

    /// Free (unreduced) product: concatenation extended bilinearly.
    pub fn concat(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// Free power.
    pub fn concat_pow(&self, k: usize) -> AlgebraElement {
        (0..k).fold(AlgebraElement::one(), |acc, _| acc.concat(self))
    }

    pub(crate) fn mark_reduced(mut self) -> Self {
        self.reduced = true;
        self
    }

    /// Largest E/F degree among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::one());
        out
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &QScalar::from_int(-1));
        out
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&QScalar::from_int(-1))
    }
}

/// Renders a coefficient/word pair; shared with tensor rendering.
pub(crate) fn fmt_term(f: &mut fmt::Formatter<'_>, first: bool, c: &QScalar, body: &str, body_is_unit: bool) -> fmt::Result {
    let minus = QScalar::from_int(-1);
    let single_neg = c
        .laurent_terms()
        .is_some_and(|t| t.len() == 1 && t[0].1 < num_bigint::BigInt::from(0));
    let (neg, mag) = if single_neg { (true, c * &minus) } else { (false, c.clone()) };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    if body_is_unit {
        let compound = mag.laurent_terms().is_some_and(|t| t.len() > 1);
        return if compound { write!(f, "({mag})") } else { write!(f, "{mag}") };
    }
    if mag.is_one() {
        return write!(f, "{body}");
    }
    let compound = mag.laurent_terms().is_some_and(|t| t.len() > 1);
    if compound {
        write!(f, "({mag})*{body}")
    } else {
        write!(f, "{mag}*{body}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            fmt_term(f, k == 0, c, &w.to_string(), w.is_empty())?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

/// The family a rewrite rule instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `J^m = J`.
    JPower,
    /// `K_i Kb_i = Kb_i K_i = D_i Db_i = Db_i D_i = J^{m-1}`.
    TorusInverse,
    /// Torus letters commute among themselves.
    TorusCommute,
    /// Torus letters commute with `J`.
    JTorusCommute,
    /// `J^{m-1} T = T` for torus letters `T`.
    JTorusAbsorb,
    /// `T X = q^c X T` for torus `T` and `X` in E/F.
    TorusExchange,
    /// `E_i F_j - F_j E_i = delta_ij (K_i - Kb_i)/(q_i - q_i^{-1})`.
    EfCommutator,
    /// Quantum Serre relations for real `i`.
    Serre,
    /// `X_i X_j = X_j X_i` when `a_ij = 0`.
    Commutation,
    /// `X J^{m-1} = J^{m-1} X = X` for type-zero `X`.
    TypeZeroAbsorb,
    /// Centrality of `J^{m-1}`.
    JCentral,
    /// Trailing `J^{m-1}` absorbed by a letter elsewhere in the word
    /// (centrality followed by an absorbing relation).
    JAbsorbGlobal,
    /// `J = 1` in the ordinary quantum group.
    JUnit,
}

impl RelationKind {
    /// Short anchor naming the relation family in reports.
    pub fn anchor(self) -> &'static str {
        match self {
            RelationKind::JPower => "J^m = J",
            RelationKind::TorusInverse => "K Kb = D Db = J^(m-1)",
            RelationKind::TorusCommute => "torus commutativity",
            RelationKind::JTorusCommute => "J commutes with torus",
            RelationKind::JTorusAbsorb => "torus absorbs J^(m-1)",
            RelationKind::TorusExchange => "torus-E/F exchange (type calculus)",
            RelationKind::EfCommutator => "EF commutator",
            RelationKind::Serre => "quantum Serre",
            RelationKind::Commutation => "a_ij = 0 commutation",
            RelationKind::TypeZeroAbsorb => "type-zero absorbs J^(m-1)",
            RelationKind::JCentral => "J^(m-1) central",
            RelationKind::JAbsorbGlobal => "J^(m-1) central + absorption",
            RelationKind::JUnit => "J = 1 (ordinary quantum group)",
        }
    }
}

/// An oriented relation `lhs -> rhs`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub kind: RelationKind,
    pub lhs: Word,
    pub rhs: AlgebraElement,
}

impl Rule {
    /// `lhs - rhs` as a free element.
    pub fn relation_element(&self) -> AlgebraElement {
        &AlgebraElement::from_word(self.lhs.clone()) - &self.rhs
    }

    pub fn name(&self) -> String {
        format!("{} -> {}", self.lhs, self.rhs)
    }
}

/// Which algebra a presentation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// The weak algebra with `J^m = J`, `m >= 2`.
    Weak,
    /// The ordinary quantum group: `J = 1`, `Kb_i = K_i^{-1}`.
    Ordinary,
}

/// One recorded rewrite: `coeff * prefix (lhs - rhs) suffix` was subtracted.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub coeff: QScalar,
    pub prefix: Word,
    pub lhs: Word,
    pub rhs: AlgebraElement,
    pub suffix: Word,
    pub kind: RelationKind,
}

/// The algebra presentation: datum, types, `m`, and the oriented rule set.
pub struct Presentation {
    datum: BorcherdsCartanDatum,
    tau: TypeTable,
    m: i64,
    flavor: Flavor,
    rules: Vec<Rule>,
    by_first: HashMap<Letter, Vec<usize>>,
    max_degree: usize,
    budget: u64,
    cache: Mutex<HashMap<Word, AlgebraElement>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("matrix", &self.datum.matrix())
            .field("tau", &self.tau.to_string())
            .field("m", &self.m)
            .field("flavor", &self.flavor)
            .field("rules", &self.rules.len())
            .finish()
    }
}

enum Match {
    Rule { pos: usize, rule: usize },
    GlobalAbsorb { tail: usize },
}

impl Presentation {
    /// Builds the weak algebra presentation for `m >= 2`.
    pub fn build(datum: &BorcherdsCartanDatum, tau: &TypeTable, m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::UnsupportedM(m));
        }
        let n = datum.rank();
        if tau.e.len() != n || tau.f.len() != n {
            return Err(Error::IndexOutOfRange { index: tau.e.len().max(tau.f.len()), rank: n });
        }
        Ok(Self::assemble(datum.clone(), tau.clone(), m, Flavor::Weak))
    }

    /// Builds the ordinary quantum group on the same datum, used as the
    /// target of the `J -> 1` quotient.
    pub fn ordinary(datum: &BorcherdsCartanDatum) -> Self {
        Self::assemble(datum.clone(), TypeTable::all_one(datum.rank()), 1, Flavor::Ordinary)
    }

    fn assemble(datum: BorcherdsCartanDatum, tau: TypeTable, m: i64, flavor: Flavor) -> Self {
        let mut p = Presentation {
            datum,
            tau,
            m,
            flavor,
            rules: Vec::new(),
            by_first: HashMap::new(),
            max_degree: DEFAULT_MAX_DEGREE,
            budget: DEFAULT_BUDGET,
            cache: Mutex::new(HashMap::new()),
        };
        p.rules = p.generate_rules();
        for (k, r) in p.rules.iter().enumerate() {
            p.by_first.entry(r.lhs.0[0]).or_default().push(k);
        }
        p
    }

    pub fn datum(&self) -> &BorcherdsCartanDatum {
        &self.datum
    }

    pub fn tau(&self) -> &TypeTable {
        &self.tau
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    pub fn set_max_degree(&mut self, d: usize) {
        self.max_degree = d;
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Type flag of an E/F letter; `None` for other letters.
    pub fn type_of(&self, l: Letter) -> Option<GenType> {
        match l {
            Letter::E(i) => Some(self.tau.e[i as usize]),
            Letter::F(i) => Some(self.tau.f[i as usize]),
            _ => None,
        }
    }

    fn is_type_zero(&self, l: Letter) -> bool {
        self.flavor == Flavor::Weak && self.type_of(l) == Some(GenType::Zero)
    }

    /// All generators, in a fixed order.
    pub fn generators(&self) -> Vec<Letter> {
        let n = self.rank() as u8;
        let mut g = Vec::new();
        for i in 0..n {
            g.extend([Letter::E(i), Letter::F(i), Letter::K(i), Letter::Kb(i), Letter::D(i), Letter::Db(i)]);
        }
        g.push(Letter::J);
        g
    }

    /// `J^{m-1}`; the empty word for the ordinary flavor.
    pub fn j_idempotent_word(&self) -> Word {
        match self.flavor {
            Flavor::Weak => Word::j_pow((self.m - 1) as usize),
            Flavor::Ordinary => Word::empty(),
        }
    }

    pub fn j_idempotent(&self) -> AlgebraElement {
        AlgebraElement::from_word(self.j_idempotent_word())
    }

    pub fn q_i(&self, i: usize) -> QScalar {
        QScalar::q_pow(self.datum.symmetrizer(i))
    }

    /// Scalar `c` with `T X = c X T`.
    pub fn exchange_factor(&self, t: Letter, x: Letter) -> QScalar {
        let (xi, is_e) = match x {
            Letter::E(i) => (i as usize, true),
            Letter::F(i) => (i as usize, false),
            _ => unreachable!("exchange with non E/F letter"),
        };
        let sign_ef = if is_e { 1 } else { -1 };
        let exp = match t {
            Letter::K(j) => sign_ef * self.datum.symmetrizer(xi) * self.datum.entry(xi, j as usize),
            Letter::Kb(j) => -sign_ef * self.datum.symmetrizer(xi) * self.datum.entry(xi, j as usize),
            Letter::D(j) => sign_ef * i64::from(j as usize == xi),
            Letter::Db(j) => -sign_ef * i64::from(j as usize == xi),
            _ => unreachable!("exchange with non-torus letter"),
        };
        QScalar::q_pow(exp)
    }

    /// The alternating Serre sum for `(i, j)` on the E or F side, unreduced.
    pub fn serre_element(&self, i: usize, j: usize, side: Side) -> Result<AlgebraElement> {
        self.datum.check_index(i)?;
        self.datum.check_index(j)?;
        if i == j || !self.datum.is_real(i) {
            return Err(Error::NotApplicable(format!("Serre relation needs a_ii = 2 and i != j, got ({i},{j})")));
        }
        let s = 1 - self.datum.entry(i, j);
        let si = self.datum.symmetrizer(i);
        let (xi, xj) = side.letters(i, j);
        let mut out = AlgebraElement::zero();
        for r in 0..=s {
            let mut w = vec![xi; (s - r) as usize];
            w.push(xj);
            w.extend(std::iter::repeat_n(xi, r as usize));
            let c = quantum_binomial(s, r, si)? * QScalar::from_int(if r % 2 == 0 { 1 } else { -1 });
            out.add_term(Word(w), &c);
        }
        Ok(out)
    }

    fn generate_rules(&self) -> Vec<Rule> {
        let n = self.rank() as u8;
        let weak = self.flavor == Flavor::Weak;
        let m = self.m as usize;
        let jm1 = self.j_idempotent_word();
        let mut rules = Vec::new();
        let mut push = |kind, lhs: Vec<Letter>, rhs: AlgebraElement| rules.push(Rule { kind, lhs: Word(lhs), rhs });

        let torus: Vec<Letter> = (0..n)
            .flat_map(|i| [Letter::K(i), Letter::Kb(i)])
            .chain((0..n).flat_map(|i| [Letter::D(i), Letter::Db(i)]))
            .collect();
        let ef: Vec<Letter> = (0..n).flat_map(|i| [Letter::E(i), Letter::F(i)]).collect();

        if weak {
            push(RelationKind::JPower, vec![Letter::J; m], AlgebraElement::letter(Letter::J));
        } else {
            push(RelationKind::JUnit, vec![Letter::J], AlgebraElement::one());
        }
        if weak {
            for &t in &torus {
                let mut lhs = jm1.0.clone();
                lhs.push(t);
                push(RelationKind::JTorusAbsorb, lhs, AlgebraElement::letter(t));
            }
            for &x in &ef {
                if self.is_type_zero(x) {
                    let mut lhs = jm1.0.clone();
                    lhs.push(x);
                    push(RelationKind::TypeZeroAbsorb, lhs, AlgebraElement::letter(x));
                }
            }
            for &x in &ef {
                if !self.is_type_zero(x) {
                    let mut lhs = jm1.0.clone();
                    lhs.push(x);
                    let rhs = AlgebraElement::from_word(Word(vec![x]).concat(&jm1));
                    push(RelationKind::JCentral, lhs, rhs);
                }
            }
            for &x in &ef {
                if self.is_type_zero(x) {
                    let mut lhs = vec![x];
                    lhs.extend(jm1.0.iter().copied());
                    push(RelationKind::TypeZeroAbsorb, lhs, AlgebraElement::letter(x));
                }
            }
        }
        for &t in &torus {
            let p = t.torus_partner().unwrap();
            push(RelationKind::TorusInverse, vec![t, p], AlgebraElement::from_word(jm1.clone()));
        }
        for &a in &torus {
            for &b in &torus {
                if a.torus_key() > b.torus_key() && a.torus_partner() != Some(b) {
                    push(RelationKind::TorusCommute, vec![a, b], AlgebraElement::from_word(Word(vec![b, a])));
                }
            }
        }
        if weak {
            for &t in &torus {
                push(RelationKind::JTorusCommute, vec![t, Letter::J], AlgebraElement::from_word(Word(vec![Letter::J, t])));
            }
        }
        for &t in &torus {
            for &x in &ef {
                push(
                    RelationKind::TorusExchange,
                    vec![t, x],
                    AlgebraElement::term(Word(vec![x, t]), self.exchange_factor(t, x)),
                );
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut rhs = AlgebraElement::from_word(Word(vec![Letter::F(j), Letter::E(i)]));
                if i == j {
                    let qi = self.q_i(i as usize);
                    let c = QScalar::one().checked_div(&(&qi - &qi.inverse().unwrap())).unwrap();
                    rhs.add_term(Word::letter(Letter::K(i)), &c);
                    rhs.add_term(Word::letter(Letter::Kb(i)), &-&c);
                }
                push(RelationKind::EfCommutator, vec![Letter::E(i), Letter::F(j)], rhs);
            }
        }
        for side in [Side::E, Side::F] {
            for i in 0..n as usize {
                for j in 0..n as usize {
                    if i == j {
                        continue;
                    }
                    let (xi, xj) = side.letters(i, j);
                    if self.datum.entry(i, j) == 0 {
                        if xi > xj {
                            push(RelationKind::Commutation, vec![xi, xj], AlgebraElement::from_word(Word(vec![xj, xi])));
                        }
                    } else if self.datum.is_real(i) {
                        let el = self.serre_element(i, j, side).expect("serre applicable");
                        let (lead, c) = el.terms().max_by(|a, b| a.0.cmp(b.0)).map(|(w, c)| (w.clone(), c.clone())).unwrap();
                        let mut rest = el.clone();
                        rest.add_term(lead.clone(), &-&c);
                        let rhs = rest.scale(&(-QScalar::one()).checked_div(&c).unwrap());
                        push(RelationKind::Serre, lead.0, rhs);
                    }
                }
            }
        }
        rules
    }

    fn find_match(&self, w: &Word) -> Option<Match> {
        let letters = &w.0;
        for pos in 0..letters.len() {
            if let Some(cands) = self.by_first.get(&letters[pos]) {
                for &k in cands {
                    let lhs = &self.rules[k].lhs.0;
                    if letters.len() - pos >= lhs.len() && letters[pos..pos + lhs.len()] == lhs[..] {
                        return Some(Match::Rule { pos, rule: k });
                    }
                }
            }
        }
        self.global_absorb(w).map(|tail| Match::GlobalAbsorb { tail })
    }

    /// A trailing `J^{m-1}` that some other letter absorbs; returns its length.
    fn global_absorb(&self, w: &Word) -> Option<usize> {
        if self.flavor != Flavor::Weak {
            return None;
        }
        let k = (self.m - 1) as usize;
        let letters = &w.0;
        let run = letters.iter().rev().take_while(|&&l| l == Letter::J).count();
        if run != k || run == letters.len() {
            return None;
        }
        let head = &letters[..letters.len() - run];
        head.iter()
            .any(|&l| l == Letter::J || l.is_torus() || self.is_type_zero(l))
            .then_some(run)
    }

    /// One rewrite at the leftmost match: `(pos, len, rhs, kind)`.
    fn rewrite_once(&self, w: &Word) -> Option<(usize, usize, AlgebraElement, RelationKind)> {
        match self.find_match(w)? {
            Match::Rule { pos, rule } => {
                let r = &self.rules[rule];
                Some((pos, r.lhs.len(), r.rhs.clone(), r.kind))
            }
            Match::GlobalAbsorb { tail } => {
                let head = Word(w.0[..w.len() - tail].to_vec());
                Some((0, w.len(), AlgebraElement::from_word(head), RelationKind::JAbsorbGlobal))
            }
        }
    }

    fn check_degree(&self, w: &Word) -> Result<()> {
        if w.degree() > self.max_degree {
            return Err(Error::ReductionBudgetExceeded(format!(
                "word {w} has degree {} > {}",
                w.degree(),
                self.max_degree
            )));
        }
        Ok(())
    }

    fn reduce_word(&self, w: &Word, steps: &mut u64) -> Result<AlgebraElement> {
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        self.check_degree(w)?;
        *steps += 1;
        if *steps > self.budget {
            return Err(Error::ReductionBudgetExceeded(format!("more than {} rewrite steps", self.budget)));
        }
        let out = match self.rewrite_once(w) {
            None => AlgebraElement::from_word(w.clone()),
            Some((pos, len, rhs, _)) => {
                let prefix = &w.0[..pos];
                let suffix = &w.0[pos + len..];
                let mut acc = AlgebraElement::zero();
                for (u, c) in rhs.terms() {
                    let mut v = Vec::with_capacity(prefix.len() + u.len() + suffix.len());
                    v.extend_from_slice(prefix);
                    v.extend_from_slice(&u.0);
                    v.extend_from_slice(suffix);
                    acc.add_scaled(&self.reduce_word(&Word(v), steps)?, c);
                }
                acc
            }
        };
        let out = out.mark_reduced();
        self.cache.lock().unwrap().insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Rewrites until no rule applies.
    pub fn reduce(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.is_reduced() {
            return Ok(x.clone());
        }
        let mut steps = 0;
        let mut out = AlgebraElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.reduce_word(w, &mut steps)?, c);
        }
        Ok(out.mark_reduced())
    }

    /// Reduction with a full record of the applied rewrite steps. Bypasses the cache.
    pub fn reduce_traced(&self, x: &AlgebraElement) -> Result<(AlgebraElement, Vec<TraceStep>)> {
        let mut pending: BTreeMap<Word, QScalar> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut done = AlgebraElement::zero();
        let mut trace = Vec::new();
        let mut steps = 0u64;
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            self.check_degree(&w)?;
            steps += 1;
            if steps > self.budget {
                return Err(Error::ReductionBudgetExceeded(format!("more than {} rewrite steps", self.budget)));
            }
            let Some((pos, len, rhs, kind)) = self.rewrite_once(&w) else {
                done.add_term(w, &c);
                continue;
            };
            let prefix = Word(w.0[..pos].to_vec());
            let lhs = Word(w.0[pos..pos + len].to_vec());
            let suffix = Word(w.0[pos + len..].to_vec());
            for (u, d) in rhs.terms() {
                let v = prefix.concat(u).concat(&suffix);
                let e = pending.entry(v).or_insert_with(QScalar::zero);
                *e = &*e + &(&c * d);
            }
            trace.push(TraceStep { coeff: c, prefix, lhs, rhs, suffix, kind });
        }
        Ok((done.mark_reduced(), trace))
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.reduce(&x.concat(y))
    }

    /// One-sided zero test: `true` proves `x = 0`; `false` is inconclusive.
    pub fn is_zero(&self, x: &AlgebraElement) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// Splits `x` along the central idempotent `J^{m-1}`.
    pub fn peirce_decompose(&self, x: &AlgebraElement) -> Result<(AlgebraElement, AlgebraElement)> {
        let e = self.j_idempotent();
        let w = self.multiply(x, &e)?;
        let wbar = self.multiply(x, &(&AlgebraElement::one() - &e))?;
        Ok((w, wbar))
    }

    /// Number of cached reduced words.
    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

/// Which family of generators a Serre relation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    E,
    F,
}

impl Side {
    fn letters(self, i: usize, j: usize) -> (Letter, Letter) {
        match self {
            Side::E => (Letter::E(i as u8), Letter::E(j as u8)),
            Side::F => (Letter::F(i as u8), Letter::F(j as u8)),
        }
    }
}

pub fn build_presentation(d: &BorcherdsCartanDatum, tau: &TypeTable, m: i64) -> Result<Presentation> {
    Presentation::build(d, tau, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::validate_datum;

    pub(crate) fn sl2(m: i64, tau: TypeTable) -> Presentation {
        let d = validate_datum(&[vec![2]], &[1]).unwrap();
        Presentation::build(&d, &tau, m).unwrap()
    }

    fn w(ls: &[Letter]) -> AlgebraElement {
        AlgebraElement::from_word(Word(ls.to_vec()))
    }

    use Letter::*;

    #[test]
    fn rejects_m_one() {
        let d = validate_datum(&[vec![2]], &[1]).unwrap();
        assert_eq!(Presentation::build(&d, &TypeTable::all_one(1), 1).unwrap_err(), Error::UnsupportedM(1));
    }

    #[test]
    fn torus_and_j_rules() {
        let p = sl2(3, TypeTable::all_one(1));
        assert!(p.rules().iter().any(|r| r.lhs == Word(vec![K(0), Kb(0)]) && r.rhs == w(&[J, J])));
        assert!(p.rules().iter().any(|r| r.lhs == Word(vec![J, J, J]) && r.rhs == w(&[J])));
        assert_eq!(p.reduce(&w(&[K(0), Kb(0)])).unwrap(), w(&[J, J]));
        assert_eq!(p.reduce(&w(&[J, J, J])).unwrap(), w(&[J]));
        assert_eq!(p.reduce(&w(&[J, J, K(0)])).unwrap(), w(&[K(0)]));
        assert_eq!(p.reduce(&w(&[K(0), J, J])).unwrap(), w(&[K(0)]));
    }

    #[test]
    fn ef_commutator() {
        let p = sl2(3, TypeTable::all_one(1));
        let got = p.reduce(&w(&[E(0), F(0)])).unwrap();
        let c = QScalar::one().checked_div(&(QScalar::q_pow(1) - QScalar::q_pow(-1))).unwrap();
        let mut expect = w(&[F(0), E(0)]);
        expect.add_term(Word(vec![K(0)]), &c);
        expect.add_term(Word(vec![Kb(0)]), &-&c);
        assert_eq!(got, expect);
    }

    #[test]
    fn serre_rules_present() {
        let d = validate_datum(&[vec![2, -1], vec![-1, 2]], &[1, 1]).unwrap();
        let p = Presentation::build(&d, &TypeTable::all_one(2), 2).unwrap();
        let s = p.serre_element(0, 1, Side::E).unwrap();
        let two = QScalar::q_pow(1) + QScalar::q_pow(-1);
        assert_eq!(s.coefficient(&Word(vec![E(0), E(1), E(0)])), -two.clone());
        assert!(s.coefficient(&Word(vec![E(0), E(0), E(1)])).is_one());
        assert!(s.coefficient(&Word(vec![E(1), E(0), E(0)])).is_one());
        assert!(p.is_zero(&s).unwrap());
        assert!(p.rules().iter().any(|r| r.kind == RelationKind::Serre
            && r.rhs.coefficient(&Word(vec![E(0), E(1), E(0)])) == two));
        assert!(matches!(p.serre_element(0, 0, Side::E), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn commutation_rule_when_orthogonal() {
        let d = validate_datum(&[vec![2, 0], vec![0, 2]], &[1, 1]).unwrap();
        let p = Presentation::build(&d, &TypeTable::all_one(2), 3).unwrap();
        assert!(p.rules().iter().any(|r| r.lhs == Word(vec![E(1), E(0)]) && r.rhs == w(&[E(0), E(1)])));
        let s = p.serre_element(0, 1, Side::E).unwrap();
        assert_eq!(s, &w(&[E(0), E(1)]) - &w(&[E(1), E(0)]));
        assert!(p.is_zero(&s).unwrap());
    }

    #[test]
    fn exchange_with_torus() {
        let d = validate_datum(&[vec![2, -1], vec![-1, 2]], &[1, 1]).unwrap();
        let p = Presentation::build(&d, &TypeTable::all_one(2), 3).unwrap();
        let got = p.multiply(&w(&[K(1)]), &w(&[E(0)])).unwrap();
        assert_eq!(got, AlgebraElement::term(Word(vec![E(0), K(1)]), QScalar::q_pow(-1)));
    }

    #[test]
    fn zero_tests() {
        let d = validate_datum(&[vec![2, -1], vec![-1, 2]], &[1, 1]).unwrap();
        let p = Presentation::build(&d, &TypeTable::all_one(2), 3).unwrap();
        assert!(p.is_zero(&(&w(&[E(0), F(1)]) - &w(&[F(1), E(0)]))).unwrap());
        assert!(p.is_zero(&(&w(&[J]) - &w(&[J, J, J]))).unwrap());
        assert!(!p.is_zero(&w(&[E(0)])).unwrap());
    }

    #[test]
    fn peirce() {
        let zero_e = TypeTable { e: vec![GenType::Zero], f: vec![GenType::One] };
        let p = sl2(4, zero_e);
        let (a, b) = p.peirce_decompose(&AlgebraElement::one()).unwrap();
        assert_eq!(a, p.j_idempotent());
        assert_eq!(b, &AlgebraElement::one() - &p.j_idempotent());
        let (a, b) = p.peirce_decompose(&w(&[K(0)])).unwrap();
        assert_eq!((a, b.is_zero()), (w(&[K(0)]), true));
        let (a, b) = p.peirce_decompose(&w(&[E(0)])).unwrap();
        assert_eq!((a, b.is_zero()), (w(&[E(0)]), true));
    }

    #[test]
    fn global_absorption() {
        let tau = TypeTable { e: vec![GenType::Zero], f: vec![GenType::One] };
        let p = sl2(3, tau);
        // F0 E0 J^2 with E0 type zero is F0 E0.
        assert_eq!(p.reduce(&w(&[F(0), E(0), J, J])).unwrap(), w(&[F(0), E(0)]));
        // Type-one F keeps the trailing idempotent.
        assert_eq!(p.reduce(&w(&[J, J, F(0)])).unwrap(), w(&[F(0), J, J]));
    }

    #[test]
    fn rendering() {
        assert_eq!(Word(vec![E(1), J, J, K(0)]).to_string(), "E1*J^2*K0");
        assert_eq!(Word::empty().to_string(), "1");
        let e = &w(&[E(0)]).scale(&(QScalar::q_pow(1) + QScalar::q_pow(-1))) - &AlgebraElement::one();
        assert_eq!(e.to_string(), "-1 + (q + q^-1)*E0");
    }
}
