//! The polygon `M = {z, w >= 0, Q_i >= 0}`, the fan of diagonal directions
//! and the maximisation of `z^p w^q` over `M`.
//!
//! Directions are swept from the q-axis `(0, 1)` to the p-axis `(1, 0)`.
//! Each line contributing an edge of `M` owns a saddle cone `K_i`, and each
//! vertex between two such edges owns a vertex cone `Omega_ij`. Generators
//! are the primitive forms of `(a_i z, b_i w)` taken at edge endpoints.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::{GFModel, Rational};
use crate::series::log_value;
use crate::{Error, Result};

/// Exact point of the `(z, w)` plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2Q {
    pub z: Rational,
    pub w: Rational,
}

impl Point2Q {
    pub fn new(z: Rational, w: Rational) -> Self {
        Self { z, w }
    }

    pub fn origin() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
}

impl fmt::Display for Point2Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z, self.w)
    }
}

/// Boundary of `M`, counterclockwise from the origin.
///
/// `vertices` is `(0,0)`, the z-axis intercept, the chain of line
/// intersections and the w-axis intercept. Edge `k` of `edge_lines` joins
/// `vertices[k + 1]` and `vertices[k + 2]`; lines appear in strictly
/// decreasing slope order `a/b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<Point2Q>,
    pub edge_lines: Vec<usize>,
}

impl Polygon {
    pub fn is_active(&self, line: usize) -> bool {
        self.edge_lines.contains(&line)
    }

    /// `(line, z-axis-side endpoint, w-axis-side endpoint)` per edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &Point2Q, &Point2Q)> + '_ {
        self.edge_lines
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, &self.vertices[k + 1], &self.vertices[k + 2]))
    }

    /// Vertices where two lines meet, as `((i, j), point)` with `i < j`.
    pub fn line_vertices(&self) -> impl Iterator<Item = ((usize, usize), &Point2Q)> + '_ {
        self.edge_lines.windows(2).enumerate().map(|(k, w)| {
            let pair = (w[0].min(w[1]), w[0].max(w[1]));
            (pair, &self.vertices[k + 2])
        })
    }
}

/// Closed-membership test for `M`.
pub fn in_closure(model: &GFModel, pt: &Point2Q) -> bool {
    !pt.z.is_negative()
        && !pt.w.is_negative()
        && model.factors().iter().all(|f| !f.eval_at(pt).is_negative())
}

/// Direction `(p, q)` with nonnegative integer components in primitive form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirVector {
    p: BigInt,
    q: BigInt,
}

impl DirVector {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_negative() || q.is_negative() {
            return Err(Error::NegativeDirection);
        }
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let g = p.gcd(&q);
        Ok(Self { p: p / &g, q: q / g })
    }

    /// Primitive integer direction proportional to `(p, q)`.
    pub fn from_rationals(p: &Rational, q: &Rational) -> Result<Self> {
        let l = p.denom().lcm(q.denom());
        let scale = Rational::from_integer(l);
        Self::new((p * &scale).to_integer(), (q * &scale).to_integer())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn p_rat(&self) -> Rational {
        Rational::from_integer(self.p.clone())
    }

    pub fn q_rat(&self) -> Rational {
        Rational::from_integer(self.q.clone())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.p.is_positive() && self.q.is_positive()
    }

    /// `self.p * other.q - self.q * other.p`.
    pub fn cross(&self, other: &DirVector) -> BigInt {
        &self.p * &other.q - &self.q * &other.p
    }
}

impl fmt::Display for DirVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeKind {
    /// `K_i`: the maximiser is the tangency point on line `i`.
    Saddle(usize),
    /// `Omega_ij` with `i < j`: the maximiser is the vertex of lines `i, j`.
    Vertex(usize, usize),
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeKind::Saddle(i) => write!(f, "K_{}", i + 1),
            ConeKind::Vertex(i, j) => write!(f, "Omega_{},{}", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub kind: ConeKind,
    /// Bounding rays in sweep order (from the q-axis side).
    pub generators: [DirVector; 2],
    /// Vertex cones: the vertex `(z_ij, w_ij)`. Saddle cones: `(1/a_i, 1/b_i)`,
    /// so that the tangency point for `(p, q)` is
    /// `(base.z * p/(p+q), base.w * q/(p+q))`.
    pub base: Point2Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub cones: Vec<Cone>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    /// Index into [`Fan::cones`].
    Interior(usize),
    /// The ray shared by two consecutive cones.
    BoundaryRay(usize, usize),
    OnAxis,
}

/// `(z_ij, w_ij)`, the common point of lines `i` and `j`.
pub fn intersect(model: &GFModel, i: usize, j: usize) -> Result<Point2Q> {
    let det = model.delta(i, j);
    if det.is_zero() {
        return Err(Error::ParallelLines(i, j));
    }
    let (fi, fj) = (model.factor(i), model.factor(j));
    Ok(Point2Q::new((&fj.b - &fi.b) / &det, (&fi.a - &fj.a) / &det))
}

fn require_positive(model: &GFModel) -> Result<()> {
    match model
        .factors()
        .iter()
        .position(|f| !f.a.is_positive() || !f.b.is_positive())
    {
        Some(i) => Err(Error::NonPositiveCoefficient(i)),
        None => Ok(()),
    }
}

/// Exact half-plane intersection. Requires positive coefficients.
pub fn build_polygon(model: &GFModel) -> Result<Polygon> {
    require_positive(model)?;
    let f = model.factors();
    let slope = |i: usize| &f[i].a / &f[i].b;

    // Lowest line at the w-axis; on a tie the steeper one stays lower.
    let mut cur = (0..f.len())
        .max_by(|&i, &j| f[i].b.cmp(&f[j].b).then_with(|| f[i].a.cmp(&f[j].a)))
        .expect("model has factors");
    let mut z_cur = Rational::zero();
    let mut chain = vec![cur];
    let mut joints = Vec::new();
    loop {
        let mut best: Option<(usize, Point2Q)> = None;
        for j in (0..f.len()).filter(|&j| j != cur) {
            let Ok(pt) = intersect(model, cur, j) else { continue };
            if pt.z <= z_cur || !pt.w.is_positive() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((b, bp)) => pt.z < bp.z || (pt.z == bp.z && slope(j) > slope(*b)),
            };
            if better {
                best = Some((j, pt));
            }
        }
        match best {
            Some((j, pt)) => {
                z_cur = pt.z.clone();
                joints.push(pt);
                chain.push(j);
                cur = j;
            }
            None => break,
        }
    }

    let first = chain[0];
    let last = *chain.last().expect("nonempty chain");
    let mut vertices = vec![
        Point2Q::origin(),
        Point2Q::new(f[last].a.recip(), Rational::zero()),
    ];
    vertices.extend(joints.into_iter().rev());
    vertices.push(Point2Q::new(Rational::zero(), f[first].b.recip()));
    chain.reverse();
    Ok(Polygon { vertices, edge_lines: chain })
}

/// Primitive form of `(a_i z, b_i w)` for a point on line `i`.
pub fn eta(model: &GFModel, i: usize, vertex: &Point2Q) -> Result<DirVector> {
    let f = model.factor(i);
    let az = &f.a * &vertex.z;
    let bw = &f.b * &vertex.w;
    if !(&az + &bw).is_one() {
        return Err(Error::VertexNotOnLine(i));
    }
    DirVector::from_rationals(&az, &bw)
}

/// The cone fan swept from `(0, 1)` to `(1, 0)`.
pub fn build_fan(model: &GFModel) -> Result<Fan> {
    let polygon = build_polygon(model)?;
    fan_from_polygon(model, &polygon)
}

pub fn fan_from_polygon(model: &GFModel, polygon: &Polygon) -> Result<Fan> {
    let lines = &polygon.edge_lines;
    let mut cones = Vec::with_capacity(2 * lines.len() - 1);
    for e in (0..lines.len()).rev() {
        let line = lines[e];
        let f = model.factor(line);
        let (start, end) = (&polygon.vertices[e + 2], &polygon.vertices[e + 1]);
        cones.push(Cone {
            kind: ConeKind::Saddle(line),
            generators: [eta(model, line, start)?, eta(model, line, end)?],
            base: Point2Q::new(f.a.recip(), f.b.recip()),
        });
        if e > 0 {
            let next = lines[e - 1];
            cones.push(Cone {
                kind: ConeKind::Vertex(line.min(next), line.max(next)),
                generators: [eta(model, line, end)?, eta(model, next, end)?],
                base: end.clone(),
            });
        }
    }
    Ok(Fan { cones })
}

/// Locates `dir` in the fan with exact cross-product tests.
pub fn classify(fan: &Fan, dir: &DirVector) -> Location {
    if !dir.is_strictly_positive() {
        return Location::OnAxis;
    }
    let n = fan.cones.len();
    for (k, cone) in fan.cones.iter().enumerate() {
        let [g1, g2] = &cone.generators;
        let c1 = g1.cross(dir);
        let c2 = dir.cross(g2);
        if c1.is_positive() || c2.is_positive() {
            continue;
        }
        return match (c1.is_zero(), c2.is_zero()) {
            (false, false) => Location::Interior(k),
            (_, true) if k + 1 < n => Location::BoundaryRay(k, k + 1),
            (true, _) if k > 0 => Location::BoundaryRay(k - 1, k),
            _ => Location::OnAxis,
        };
    }
    unreachable!("fan covers the closed quadrant")
}

/// The point of line `i` where `z^p w^q` is maximal:
/// `(p / ((p+q) a_i), q / ((p+q) b_i))`. Requires `a_i, b_i != 0`.
pub fn saddle_point(model: &GFModel, i: usize, dir: &DirVector) -> Point2Q {
    let f = model.factor(i);
    let (p, q) = (dir.p_rat(), dir.q_rat());
    let s = &p + &q;
    Point2Q::new(p / (&s * &f.a), q / (&s * &f.b))
}

/// Compares `p ln z + q ln w` at two points; points off the open quadrant
/// count as `-inf`. Floats decide unless the margin is below `1e-9`, in which
/// case `z^p w^q` is compared exactly.
pub fn compare_objective(a: &Point2Q, b: &Point2Q, dir: &DirVector) -> Result<Ordering> {
    let open = |pt: &Point2Q| pt.z.is_positive() && pt.w.is_positive();
    match (open(a), open(b)) {
        (false, false) => return Ok(Ordering::Equal),
        (false, true) => return Ok(Ordering::Less),
        (true, false) => return Ok(Ordering::Greater),
        (true, true) => {}
    }
    if a == b {
        return Ok(Ordering::Equal);
    }
    let (pf, qf) = (
        dir.p.to_f64().unwrap_or(f64::INFINITY),
        dir.q.to_f64().unwrap_or(f64::INFINITY),
    );
    let obj = |pt: &Point2Q| pf * log_value(&pt.z).ln_abs + qf * log_value(&pt.w).ln_abs;
    let (la, lb) = (obj(a), obj(b));
    let scale = 1f64.max(la.abs()).max(lb.abs());
    if (la - lb).abs() > 1e-9 * scale {
        return Ok(la.partial_cmp(&lb).unwrap_or(Ordering::Equal));
    }
    let p = dir.p.to_u32().ok_or(Error::DirectionTooLarge)?;
    let q = dir.q.to_u32().ok_or(Error::DirectionTooLarge)?;
    let value = |pt: &Point2Q| num_traits::pow(pt.z.clone(), p as usize) * num_traits::pow(pt.w.clone(), q as usize);
    Ok(value(a).cmp(&value(b)))
}

/// Maximiser of `z^p w^q` over the closure of `M` and every candidate that
/// attains it. More than one witness means `dir` lies on a boundary ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgMax {
    pub point: Point2Q,
    pub witnesses: Vec<ConeKind>,
}

impl ArgMax {
    pub fn is_tie(&self) -> bool {
        self.witnesses.len() > 1
    }
}

/// Brute-force maximisation over polygon vertices and in-segment tangency
/// points. Independent of the fan construction.
pub fn argmax_oracle(model: &GFModel, dir: &DirVector) -> Result<ArgMax> {
    if !dir.is_strictly_positive() {
        return Err(Error::AxisDirection);
    }
    let polygon = build_polygon(model)?;
    let mut candidates: Vec<(ConeKind, Point2Q)> = polygon
        .line_vertices()
        .map(|((i, j), v)| (ConeKind::Vertex(i, j), v.clone()))
        .collect();
    for (line, a, b) in polygon.edges() {
        let s = saddle_point(model, line, dir);
        let (lo, hi) = if a.z <= b.z { (&a.z, &b.z) } else { (&b.z, &a.z) };
        if *lo <= s.z && s.z <= *hi {
            candidates.push((ConeKind::Saddle(line), s));
        }
    }

    let mut best: Option<ArgMax> = None;
    for (kind, pt) in candidates {
        match &mut best {
            None => best = Some(ArgMax { point: pt, witnesses: vec![kind] }),
            Some(cur) => match compare_objective(&pt, &cur.point, dir)? {
                Ordering::Greater => *cur = ArgMax { point: pt, witnesses: vec![kind] },
                Ordering::Equal => cur.witnesses.push(kind),
                Ordering::Less => {}
            },
        }
    }
    let mut best = best.expect("an edge always carries a candidate");
    best.witnesses.sort();
    Ok(best)
}
