//! Tensor elements, generator maps, and the bialgebra structure maps.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::presentation::{fmt_term, AlgebraElement, GenType, Letter, Presentation, Word};
use crate::qscalar::QScalar;
use crate::report::CheckRecord;

/// An element of the n-fold tensor power of the algebra. Zero legs is the
/// ground field, one leg is the algebra itself.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    legs: usize,
    terms: BTreeMap<Vec<Word>, QScalar>,
}

impl Tensor {
    pub fn zero(legs: usize) -> Self {
        Tensor { legs, terms: BTreeMap::new() }
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn unit(legs: usize) -> Self {
        Self::pure(vec![Word::empty(); legs], QScalar::one())
    }

    pub fn pure(words: Vec<Word>, c: QScalar) -> Self {
        let mut t = Tensor::zero(words.len());
        t.add_term(words, &c);
        t
    }

    /// `a ⊗ b` for letter words.
    pub fn simple(a: &[Letter], b: &[Letter]) -> Self {
        Self::pure(vec![Word(a.to_vec()), Word(b.to_vec())], QScalar::one())
    }

    pub fn from_element(x: &AlgebraElement) -> Self {
        let mut t = Tensor::zero(1);
        for (w, c) in x.terms() {
            t.add_term(vec![w.clone()], c);
        }
        t
    }

    pub fn from_scalar(c: QScalar) -> Self {
        Self::pure(Vec::new(), c)
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &QScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, words: &[Word]) -> QScalar {
        self.terms.get(words).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: &QScalar) {
        assert_eq!(words.len(), self.legs, "tensor leg count mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(words) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &QScalar) {
        assert_eq!(self.legs, other.legs, "tensor leg count mismatch");
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &QScalar) -> Tensor {
        let mut out = Tensor::zero(self.legs);
        out.add_scaled(self, c);
        out
    }

    /// Componentwise free product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn concat(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.legs, other.legs, "tensor leg count mismatch");
        let mut out = Tensor::zero(self.legs);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w = u.iter().zip(v).map(|(x, y)| x.concat(y)).collect();
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Outer tensor product; leg counts add.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.legs + other.legs);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend(v.iter().cloned());
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Reduces every leg independently.
    pub fn reduce(&self, p: &Presentation) -> Result<Tensor> {
        let mut out = Tensor::zero(self.legs);
        for (words, c) in &self.terms {
            let mut partial = Tensor::from_scalar(c.clone());
            for w in words {
                let r = p.reduce(&AlgebraElement::from_word(w.clone()))?;
                partial = partial.outer(&Tensor::from_element(&r));
            }
            out.add_scaled(&partial, &QScalar::one());
        }
        Ok(out)
    }

    /// Replaces leg `leg` by the tensor `f(word)`, splicing its legs in place.
    pub fn splice_leg(&self, leg: usize, f: &mut dyn FnMut(&Word) -> Result<Tensor>) -> Result<Tensor> {
        assert!(leg < self.legs, "leg out of range");
        let mut cache: BTreeMap<Word, Tensor> = BTreeMap::new();
        let mut out: Option<Tensor> = None;
        for (words, c) in &self.terms {
            if !cache.contains_key(&words[leg]) {
                cache.insert(words[leg].clone(), f(&words[leg])?);
            }
            let img = &cache[&words[leg]];
            let left = Tensor::pure(words[..leg].to_vec(), c.clone());
            let right = Tensor::pure(words[leg + 1..].to_vec(), QScalar::one());
            let piece = left.outer(img).outer(&right);
            match &mut out {
                None => out = Some(piece),
                Some(o) => o.add_scaled(&piece, &QScalar::one()),
            }
        }
        Ok(out.unwrap_or_else(|| Tensor::zero(self.legs - 1 + f(&Word::empty()).map(|t| t.legs).unwrap_or(1))))
    }

    /// Multiplies the legs left to right and reduces.
    pub fn collapse(&self, p: &Presentation) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero();
        for (words, c) in &self.terms {
            let w: Word = words.iter().flat_map(|w| w.0.iter().copied()).collect();
            out.add_term(w, c);
        }
        p.reduce(&out)
    }

    /// The single leg of a one-leg tensor as an algebra element.
    pub fn to_element(&self) -> AlgebraElement {
        assert_eq!(self.legs, 1);
        let mut out = AlgebraElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w[0].clone(), c);
        }
        out
    }

    /// The scalar value of a zero-leg tensor.
    pub fn to_scalar(&self) -> QScalar {
        assert_eq!(self.legs, 0);
        self.terms.values().next().cloned().unwrap_or_else(QScalar::zero)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (words, c)) in self.terms.iter().enumerate() {
            let body = words.iter().map(Word::to_string).collect::<Vec<_>>().join(" ⊗ ");
            let unit = self.legs == 0;
            let body = if self.legs > 1 { format!("({body})") } else { body };
            fmt_term(f, k == 0, c, &body, unit)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor[{}]({self})", self.legs)
    }
}

/// Values a generator map can take: algebra elements, tensors, scalars.
pub trait Codomain: Clone + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn free_mul(&self, other: &Self) -> Self;
    fn add_scaled(&mut self, other: &Self, c: &QScalar);
    fn reduce_in(&self, p: &Presentation) -> Result<Self>;
    fn is_zero_value(&self) -> bool;
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Codomain for AlgebraElement {
    fn zero_like(&self) -> Self {
        AlgebraElement::zero()
    }
    fn free_mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn add_scaled(&mut self, other: &Self, c: &QScalar) {
        AlgebraElement::add_scaled(self, other, c)
    }
    fn reduce_in(&self, p: &Presentation) -> Result<Self> {
        p.reduce(self)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Codomain for Tensor {
    fn zero_like(&self) -> Self {
        Tensor::zero(self.legs)
    }
    fn free_mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn add_scaled(&mut self, other: &Self, c: &QScalar) {
        Tensor::add_scaled(self, other, c)
    }
    fn reduce_in(&self, p: &Presentation) -> Result<Self> {
        self.reduce(p)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Codomain for QScalar {
    fn zero_like(&self) -> Self {
        QScalar::zero()
    }
    fn free_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn add_scaled(&mut self, other: &Self, c: &QScalar) {
        *self = &*self + &(other * c);
    }
    fn reduce_in(&self, _: &Presentation) -> Result<Self> {
        Ok(self.clone())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// How a generator map extends to words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `f(g_1 ... g_k) = f(g_1) ... f(g_k)`.
    Morphism,
    /// `f(g_1 ... g_k) = f(g_k) ... f(g_1)`.
    AntiMorphism,
}

/// Images of the generators plus the image of the empty word.
#[derive(Clone)]
pub struct GeneratorMap<V: Codomain> {
    pub name: String,
    pub mode: Mode,
    pub images: BTreeMap<Letter, V>,
    pub unit: V,
}

impl<V: Codomain> GeneratorMap<V> {
    pub fn new(name: impl Into<String>, mode: Mode, unit: V) -> Self {
        GeneratorMap { name: name.into(), mode, images: BTreeMap::new(), unit }
    }

    pub fn with(mut self, l: Letter, v: V) -> Self {
        self.images.insert(l, v);
        self
    }

    pub fn set(&mut self, l: Letter, v: V) {
        self.images.insert(l, v);
    }

    pub fn image(&self, l: Letter) -> Result<&V> {
        self.images.get(&l).ok_or_else(|| Error::UnknownGenerator(format!("{l} has no image under {}", self.name)))
    }

    /// Image of a single word, reduced in `p`.
    pub fn apply_word(&self, p: &Presentation, w: &Word) -> Result<V> {
        if w.is_empty() {
            return self.unit.reduce_in(p);
        }
        let letters: Vec<Letter> = match self.mode {
            Mode::Morphism => w.0.clone(),
            Mode::AntiMorphism => w.0.iter().rev().copied().collect(),
        };
        let mut acc = self.image(letters[0])?.clone();
        for &l in &letters[1..] {
            acc = acc.free_mul(self.image(l)?).reduce_in(p)?;
        }
        acc.reduce_in(p)
    }
}

/// Extends `f` over `x` and reduces the result in `p`.
pub fn apply_map<V: Codomain>(p: &Presentation, f: &GeneratorMap<V>, x: &AlgebraElement) -> Result<V> {
    let mut out = f.unit.zero_like();
    for (w, c) in x.terms() {
        out.add_scaled(&f.apply_word(p, w)?, c);
    }
    out.reduce_in(p)
}

/// Componentwise product of tensors, reduced.
pub fn tensor_multiply(p: &Presentation, u: &Tensor, v: &Tensor) -> Result<Tensor> {
    u.concat(v).reduce(p)
}

/// Δ: grouplikes on the torus and J; E/F skew-primitive according to type.
pub fn standard_coproduct(p: &Presentation) -> GeneratorMap<Tensor> {
    let jm1 = p.j_idempotent_word();
    let mut d = GeneratorMap::new("Delta", Mode::Morphism, Tensor::unit(2));
    for l in p.generators() {
        let img = match l {
            Letter::E(i) => {
                let left = if p.type_of(l) == Some(GenType::Zero) { jm1.clone() } else { Word::empty() };
                let mut t = Tensor::pure(vec![left, Word::letter(l)], QScalar::one());
                t.add_term(vec![Word::letter(l), Word::letter(Letter::K(i))], &QScalar::one());
                t
            }
            Letter::F(i) => {
                let right = if p.type_of(l) == Some(GenType::Zero) { jm1.clone() } else { Word::empty() };
                let mut t = Tensor::pure(vec![Word::letter(l), right], QScalar::one());
                t.add_term(vec![Word::letter(Letter::Kb(i)), Word::letter(l)], &QScalar::one());
                t
            }
            _ => Tensor::simple(&[l], &[l]),
        };
        d.set(l, img);
    }
    d
}

/// ε: 1 on the torus and J, 0 on E and F.
pub fn standard_counit(p: &Presentation) -> GeneratorMap<QScalar> {
    let mut e = GeneratorMap::new("epsilon", Mode::Morphism, QScalar::one());
    for l in p.generators() {
        e.set(l, if l.is_ef() { QScalar::zero() } else { QScalar::one() });
    }
    e
}

/// Checks `f(lhs) = f(rhs)` in `target` for every rule of `source`.
pub fn verify_morphism_on_relations<V: Codomain>(
    source: &Presentation,
    f: &GeneratorMap<V>,
    target: &Presentation,
) -> Vec<CheckRecord> {
    source
        .rules()
        .iter()
        .map(|r| {
            let start = Instant::now();
            let id = format!("{}:{}", f.name, r.name());
            let residue = apply_map(target, f, &AlgebraElement::from_word(r.lhs.clone())).and_then(|l| {
                let mut d = l;
                d.add_scaled(&apply_map(target, f, &r.rhs)?, &QScalar::from_int(-1));
                d.reduce_in(target)
            });
            let rec = match residue {
                Ok(d) if d.is_zero_value() => CheckRecord::outcome(id, r.kind.anchor(), true, true, None),
                Ok(d) => CheckRecord::outcome(id, r.kind.anchor(), false, true, Some(d.render())),
                Err(e) => CheckRecord::outcome(id, r.kind.anchor(), false, true, Some(format!("error: {e}"))),
            };
            rec.timed(start)
        })
        .collect()
}

/// Δ as a tensor-valued function of a word, for leg splicing.
pub fn coproduct_word(p: &Presentation, delta: &GeneratorMap<Tensor>, w: &Word) -> Result<Tensor> {
    delta.apply_word(p, w)
}

/// Coassociativity and both counit laws on every generator.
pub fn verify_coalgebra_axioms(
    p: &Presentation,
    delta: &GeneratorMap<Tensor>,
    eps: &GeneratorMap<QScalar>,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let mut gens: Vec<Word> = p.generators().into_iter().map(Word::letter).collect();
    gens.push(p.j_idempotent_word());
    for x in gens {
        let xe = AlgebraElement::from_word(x.clone());
        let start = Instant::now();
        let coassoc = (|| -> Result<Tensor> {
            let t = apply_map(p, delta, &xe)?;
            let l = t.splice_leg(0, &mut |w| delta.apply_word(p, w))?;
            let r = t.splice_leg(1, &mut |w| delta.apply_word(p, w))?;
            let mut d = l;
            d.add_scaled(&r, &QScalar::from_int(-1));
            d.reduce(p)
        })();
        out.push(record(format!("coassoc:{x}"), "coassociativity", coassoc.map(|t| t.to_string()), start));
        for leg in 0..2 {
            let start = Instant::now();
            let counit = (|| -> Result<AlgebraElement> {
                let t = apply_map(p, delta, &xe)?;
                let s = t.splice_leg(leg, &mut |w| Ok(Tensor::from_scalar(eps.apply_word(p, w)?)))?;
                p.reduce(&(&s.to_element() - &xe))
            })();
            let side = if leg == 0 { "left" } else { "right" };
            out.push(record(format!("counit-{side}:{x}"), "counit law", counit.map(|t| t.to_string()), start));
        }
    }
    out
}

fn record(id: String, anchor: &str, residue: Result<String>, start: Instant) -> CheckRecord {
    match residue {
        Ok(r) if r == "0" => CheckRecord::outcome(id, anchor, true, true, None),
        Ok(r) => CheckRecord::outcome(id, anchor, false, true, Some(r)),
        Err(e) => CheckRecord::outcome(id, anchor, false, true, Some(format!("error: {e}"))),
    }
    .timed(start)
}
