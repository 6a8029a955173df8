//! Numeric evidence for residual finiteness: the von Dyck quotient
//! `Â = ⟨x, y | x^a, y^b, (x⁻¹y)^c⟩` realized inside the geometric
//! representation of the triangle Coxeter group.

mod conditions;
mod pingpong;

pub use conditions::{check_quotient_conditions, quotient_for, QuotientReport, RfEntry, RfStatus};
pub use pingpong::{alternating_word, ping_pong_check, PingPongReport};

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::word::Word;

/// Default pass threshold for relator residuals.
pub const PASS_TOL: f64 = 1e-9;
/// A word is a ping-pong failure when this close to the identity.
pub const FAIL_TOL: f64 = 1e-6;
/// Longest word `evaluate` accepts.
pub const MAX_WORD_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
            Geometry::Hyperbolic => "hyperbolic",
        })
    }
}

/// Orders of `x`, `y` and `x⁻¹y` in `Â`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientParams {
    pub x_order: u32,
    pub y_order: u32,
    pub z_order: u32,
}

impl QuotientParams {
    pub fn new(x_order: u32, y_order: u32, z_order: u32) -> Result<Self> {
        if [x_order, y_order, z_order].iter().any(|&k| k < 2) {
            return Err(Error::Parameter(format!(
                "orders must be ≥ 2, got ({x_order},{y_order},{z_order})"
            )));
        }
        Ok(QuotientParams {
            x_order,
            y_order,
            z_order,
        })
    }

    /// Sign of `1/a + 1/b + 1/c − 1`, compared exactly.
    pub fn geometry(&self) -> Geometry {
        let (a, b, c) = (
            u64::from(self.x_order),
            u64::from(self.y_order),
            u64::from(self.z_order),
        );
        match (b * c + a * c + a * b).cmp(&(a * b * c)) {
            std::cmp::Ordering::Greater => Geometry::Spherical,
            std::cmp::Ordering::Equal => Geometry::Euclidean,
            std::cmp::Ordering::Less => Geometry::Hyperbolic,
        }
    }

    /// `1/a + 1/b + 1/c − 1`
    pub fn angle_excess(&self) -> f64 {
        1.0 / f64::from(self.x_order)
            + 1.0 / f64::from(self.y_order)
            + 1.0 / f64::from(self.z_order)
            - 1.0
    }
}

impl fmt::Display for QuotientParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x_order, self.y_order, self.z_order)
    }
}

/// Reflections `a, b, c` of the triangle group with `(ab)`, `(bc)`, `(ca)`
/// of orders `x_order`, `y_order`, `z_order`, and the rotations `x = ba`,
/// `y = bc`, so that `x⁻¹y = ac`.
#[derive(Debug, Clone)]
pub struct TriangleRep {
    pub params: QuotientParams,
    pub gram: Matrix3<f64>,
    pub reflections: [Matrix3<f64>; 3],
    pub x_mat: Matrix3<f64>,
    pub y_mat: Matrix3<f64>,
    x_inv: Matrix3<f64>,
    y_inv: Matrix3<f64>,
    pub tolerance: f64,
}

/// `min(‖A − I‖_max, ‖A + I‖_max)`: distance to the identity up to sign.
pub fn projective_distance(a: &Matrix3<f64>) -> f64 {
    let id = Matrix3::identity();
    (a - id).amax().min((a + id).amax())
}

fn reflection(gram: &Matrix3<f64>, v: usize) -> Matrix3<f64> {
    // column u is e_u − 2 B(e_u, e_v) e_v
    let mut r = Matrix3::identity();
    for u in 0..3 {
        r[(v, u)] -= 2.0 * gram[(u, v)];
    }
    r
}

fn power(m: &Matrix3<f64>, k: u32) -> Matrix3<f64> {
    (0..k).fold(Matrix3::identity(), |acc, _| acc * m)
}

pub fn triangle_rep(q: QuotientParams, tol: f64) -> Result<TriangleRep> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let c = |k: u32| -(PI / f64::from(k)).cos();
    let (ab, bc, ca) = (c(q.x_order), c(q.y_order), c(q.z_order));
    #[rustfmt::skip]
    let gram = Matrix3::new(
        1.0, ab,  ca,
        ab,  1.0, bc,
        ca,  bc,  1.0,
    );
    let reflections = [
        reflection(&gram, 0),
        reflection(&gram, 1),
        reflection(&gram, 2),
    ];
    let [ra, rb, rc] = &reflections;
    let rep = TriangleRep {
        params: q,
        gram,
        x_mat: rb * ra,
        y_mat: rb * rc,
        x_inv: ra * rb,
        y_inv: rc * rb,
        reflections,
        tolerance: tol,
    };
    let mut residuals = Vec::new();
    for (name, r) in ["a", "b", "c"].iter().zip(&rep.reflections) {
        residuals.push((format!("{name}^2"), (r * r - Matrix3::identity()).amax()));
    }
    residuals.push((
        format!("x^{}", q.x_order),
        projective_distance(&power(&rep.x_mat, q.x_order)),
    ));
    residuals.push((
        format!("y^{}", q.y_order),
        projective_distance(&power(&rep.y_mat, q.y_order)),
    ));
    residuals.push((
        format!("(x^-1.y)^{}", q.z_order),
        projective_distance(&power(&(rep.x_inv * rep.y_mat), q.z_order)),
    ));
    let bad: Vec<String> = residuals
        .iter()
        .filter(|(_, r)| !(*r < tol))
        .map(|(n, r)| format!("{n}: {r:.3e}"))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Numeric(format!(
            "representation invariants exceed tolerance {tol:e}: {}",
            bad.join(", ")
        )));
    }
    Ok(rep)
}

impl TriangleRep {
    /// Matrix of a word over `{x, y}` (generators 1 and 2), multiplied in
    /// word order.
    pub fn evaluate(&self, w: &Word) -> Result<Matrix3<f64>> {
        if w.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                length: w.len(),
                bound: MAX_WORD_LEN,
            });
        }
        w.check_rank(2)?;
        Ok(w.letters().iter().fold(Matrix3::identity(), |acc, l| {
            acc * match (l.generator(), l.is_positive()) {
                (1, true) => &self.x_mat,
                (1, false) => &self.x_inv,
                (2, true) => &self.y_mat,
                _ => &self.y_inv,
            }
        }))
    }

    /// Projective distance of `w` from the identity.
    pub fn distance(&self, w: &Word) -> Result<f64> {
        Ok(projective_distance(&self.evaluate(w)?))
    }
}

/// Smallest `k ≤ cap` with `g^k` within `tol` of `±I`.
pub fn projective_order(g: &Matrix3<f64>, cap: u32, tol: f64) -> Option<u32> {
    let mut acc = Matrix3::identity();
    for k in 1..=cap {
        acc *= g;
        if projective_distance(&acc) < tol {
            return Some(k);
        }
    }
    None
}

/// Closure of `gens` under multiplication, up to sign, or `None` once more
/// than `cap` elements have been found.
pub fn finite_closure(gens: &[Matrix3<f64>], cap: usize, tol: f64) -> Option<usize> {
    let same = |a: &Matrix3<f64>, b: &Matrix3<f64>| {
        let scale = a.amax().max(b.amax()).max(1.0);
        (a - b).amax().min((a + b).amax()) < tol * scale
    };
    let mut elements = vec![Matrix3::identity()];
    let mut frontier = vec![Matrix3::identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in gens {
                let p = e * g;
                if !elements.iter().any(|f| same(f, &p)) {
                    if elements.len() >= cap {
                        return None;
                    }
                    elements.push(p);
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Some(elements.len())
}
