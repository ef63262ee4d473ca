//! One-dimensional modules over the `(1 - J^{m-1})` component.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::presentation::{GenType, Letter, Presentation, Word};
use crate::qscalar::QScalar;
use crate::report::CheckRecord;

/// First real index carrying a type-one E or F generator with some
/// `a_ij != 0` (always true for real `i`, as `a_ii = 2`).
pub fn wbar_gate_violation(p: &Presentation) -> Option<usize> {
    let d = p.datum();
    (0..p.rank()).find(|&i| {
        let type_one = p.tau().e[i] == GenType::One || p.tau().f[i] == GenType::One;
        type_one && d.is_real(i) && (0..p.rank()).any(|j| d.entry(i, j) != 0)
    })
}

fn scalar_of(p: &Presentation, a: &[QScalar], b: &[QScalar], w: &Word) -> QScalar {
    let mut s = QScalar::one();
    for &l in &w.0 {
        let v = match l {
            Letter::E(i) if p.type_of(l) == Some(GenType::One) => a[i as usize].clone(),
            Letter::F(i) if p.type_of(l) == Some(GenType::One) => b[i as usize].clone(),
            _ => QScalar::zero(),
        };
        s = &s * &v;
        if s.is_zero() {
            break;
        }
    }
    s
}

/// Evaluates every defining relation in the one-dimensional representation
/// `E_i -> a_i`, `F_j -> b_j` (type one), everything else `-> 0`.
pub fn onedim_relation_check(p: &Presentation, a: &[QScalar], b: &[QScalar]) -> Vec<CheckRecord> {
    p.rules()
        .iter()
        .map(|r| {
            let start = Instant::now();
            let mut v = scalar_of(p, a, b, &r.lhs);
            for (w, c) in r.rhs.terms() {
                v = &v - &(c * &scalar_of(p, a, b, w));
            }
            CheckRecord::outcome(
                format!("onedim:{}", r.name()),
                r.kind.anchor(),
                v.is_zero(),
                true,
                (!v.is_zero()).then(|| v.to_string()),
            )
            .timed(start)
        })
        .collect()
}

/// Gated construction: errors with `GatingViolation` when some real index has
/// a type-one generator, otherwise returns the relation checks.
pub fn onedim_wbar_modules(p: &Presentation, a: &[QScalar], b: &[QScalar]) -> Result<Vec<CheckRecord>> {
    if a.len() != p.rank() || b.len() != p.rank() {
        return Err(Error::IndexOutOfRange { index: a.len().max(b.len()), rank: p.rank() });
    }
    if let Some(i) = wbar_gate_violation(p) {
        return Err(Error::GatingViolation(i));
    }
    Ok(onedim_relation_check(p, a, b))
}
