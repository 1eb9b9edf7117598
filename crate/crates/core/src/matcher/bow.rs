use std::cmp::Ordering;

use crate::text::{normalize, Norm, TermVector};

/// Distance between two raw-count vectors after normalizing both under
/// `norm`: sum of absolute differences (L1) or Euclidean distance (L2).
///
/// Two empty vectors are at distance 0; an empty and a non-empty vector are
/// at distance 1, the non-empty vector's own normalized magnitude.
pub fn bow_distance(u: &TermVector, v: &TermVector, norm: Norm) -> f64 {
    normalized_distance(&normalize(u, norm), &normalize(v, norm), norm)
}

/// [`bow_distance`] for vectors already normalized under `norm`.
pub(crate) fn normalized_distance(u: &TermVector, v: &TermVector, norm: Norm) -> f64 {
    match (u.is_empty(), v.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return 1.0,
        _ => {}
    }
    let mut acc = 0.0;
    let mut add = |d: f64| match norm {
        Norm::L1 => acc += d.abs(),
        Norm::L2 => acc += d * d,
    };

    let mut a = u.iter().peekable();
    let mut b = v.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(&(ta, wa)), Some(&(tb, wb))) => match ta.cmp(tb) {
                Ordering::Less => {
                    add(wa);
                    a.next();
                }
                Ordering::Greater => {
                    add(wb);
                    b.next();
                }
                Ordering::Equal => {
                    add(wa - wb);
                    a.next();
                    b.next();
                }
            },
            (Some(&(_, wa)), None) => {
                add(wa);
                a.next();
            }
            (None, Some(&(_, wb))) => {
                add(wb);
                b.next();
            }
            (None, None) => break,
        }
    }
    match norm {
        Norm::L1 => acc,
        Norm::L2 => acc.sqrt(),
    }
}

/// Distance every non-empty vector has to any non-empty vector it shares no
/// token with.
pub(crate) fn disjoint_distance(norm: Norm) -> f64 {
    match norm {
        Norm::L1 => 2.0,
        Norm::L2 => std::f64::consts::SQRT_2,
    }
}
