//! Affine points, lines, parallel classes, flags, and the three conic
//! families over F_q.
//!
//! The families are cut out of the pencil of plane conics by their behaviour
//! at infinity: a parabolic conic `y = ax^2 + bx + c` is tangent to the line
//! at infinity, a hyperbolic conic `xy = ax + by + c` passes through the two
//! rational points at infinity on the axes, and an elliptic conic
//! `x^2 - beta*y^2 = ax + by + c` (odd q) or `x^2 + xy + beta*y^2 = ax + by + c`
//! (even q) passes through a conjugate non-rational pair. Each family has
//! exactly q^3 - q^2 smooth members, bijectively parameterised by (a, b, c).

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// The three conic families, indexed 1, 2, 3 in the tables and CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConicFamily {
    Parabolic,
    Hyperbolic,
    Elliptic,
}

impl ConicFamily {
    pub const ALL: [ConicFamily; 3] =
        [ConicFamily::Parabolic, ConicFamily::Hyperbolic, ConicFamily::Elliptic];

    pub fn index(self) -> u8 {
        match self {
            ConicFamily::Parabolic => 1,
            ConicFamily::Hyperbolic => 2,
            ConicFamily::Elliptic => 3,
        }
    }

    pub fn from_index(index: u8) -> Option<Self> {
        match index {
            1 => Some(ConicFamily::Parabolic),
            2 => Some(ConicFamily::Hyperbolic),
            3 => Some(ConicFamily::Elliptic),
            _ => None,
        }
    }

    /// Rational points on each member conic: q, q-1, q+1.
    pub fn points_per_conic(self, q: u32) -> usize {
        match self {
            ConicFamily::Parabolic => q as usize,
            ConicFamily::Hyperbolic => q as usize - 1,
            ConicFamily::Elliptic => q as usize + 1,
        }
    }

    /// Flags of the family's incidence structure exclude vertical lines
    /// (parabolic) or vertical and horizontal lines (hyperbolic).
    pub fn line_admissible(self, line: &Line) -> bool {
        match self {
            ConicFamily::Parabolic => !line.is_vertical(),
            ConicFamily::Hyperbolic => !line.is_vertical() && !line.is_horizontal(),
            ConicFamily::Elliptic => true,
        }
    }

    pub fn class_admissible(self, class: ParallelClass) -> bool {
        match (self, class) {
            (ConicFamily::Parabolic, ParallelClass::Vertical) => false,
            (ConicFamily::Hyperbolic, ParallelClass::Vertical) => false,
            (ConicFamily::Hyperbolic, ParallelClass::Slope(m)) => !m.is_zero(),
            _ => true,
        }
    }

    /// Number of admissible lines through a fixed point: q, q-1, q+1.
    pub fn lines_per_point(self, q: u32) -> usize {
        match self {
            ConicFamily::Parabolic => q as usize,
            ConicFamily::Hyperbolic => q as usize - 1,
            ConicFamily::Elliptic => q as usize + 1,
        }
    }
}

/// A rational point of the affine plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Self { x, y }
    }
}

/// An affine line in its unique canonical form: `y = slope*x + intercept`
/// or `x = const`. The derived ordering (slanted lines by slope then
/// intercept, vertical lines last) is the canonical line key used for flag
/// indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Line {
    Slanted { slope: FieldElement, intercept: FieldElement },
    Vertical { x: FieldElement },
}

impl Line {
    pub fn contains(&self, spec: &FieldSpec, p: Point) -> bool {
        match *self {
            Line::Slanted { slope, intercept } => {
                p.y == spec.add(spec.mul(slope, p.x), intercept)
            }
            Line::Vertical { x } => p.x == x,
        }
    }

    /// The unique line through `p` in the given parallel class.
    pub fn through(spec: &FieldSpec, p: Point, class: ParallelClass) -> Line {
        match class {
            ParallelClass::Slope(slope) => {
                Line::Slanted { slope, intercept: spec.sub(p.y, spec.mul(slope, p.x)) }
            }
            ParallelClass::Vertical => Line::Vertical { x: p.x },
        }
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self, Line::Vertical { .. })
    }

    pub fn is_horizontal(&self) -> bool {
        matches!(self, Line::Slanted { slope, .. } if slope.is_zero())
    }

    pub fn parallel_class(&self) -> ParallelClass {
        match *self {
            Line::Slanted { slope, .. } => ParallelClass::Slope(slope),
            Line::Vertical { .. } => ParallelClass::Vertical,
        }
    }

    /// Rational points of the line, in coordinate order.
    pub fn points(&self, spec: &FieldSpec) -> Vec<Point> {
        match *self {
            Line::Slanted { slope, intercept } => spec
                .elements()
                .map(|x| Point::new(x, spec.add(spec.mul(slope, x), intercept)))
                .collect(),
            Line::Vertical { x } => spec.elements().map(|y| Point::new(x, y)).collect(),
        }
    }
}

/// A class of parallel affine lines; there are q + 1 of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParallelClass {
    Slope(FieldElement),
    Vertical,
}

impl ParallelClass {
    /// All q + 1 classes in canonical order (slopes ascending, then vertical).
    pub fn all(spec: &FieldSpec) -> Vec<ParallelClass> {
        let mut classes: Vec<ParallelClass> =
            spec.elements().map(ParallelClass::Slope).collect();
        classes.push(ParallelClass::Vertical);
        classes
    }
}

/// A flag: a rational point together with a line through it. These model
/// the rational points of the plane blown up at all its rational points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    pub point: Point,
    pub line: Line,
}

impl Flag {
    pub fn new(point: Point, line: Line) -> Self {
        Self { point, line }
    }
}

/// A smooth conic of one of the three families, in its canonical equation
/// with parameters (a, b, c). Elliptic conics also carry the beta chosen
/// once per field by [`FieldSpec::pick_beta`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conic {
    family: ConicFamily,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    beta: Option<FieldElement>,
}

impl Conic {
    /// Builds a conic after checking the family's smoothness condition:
    /// `a != 0` (parabolic), `c != -ab` (hyperbolic), or `c` distinct from
    /// the single value that makes the elliptic equation singular.
    pub fn new(
        family: ConicFamily,
        spec: &FieldSpec,
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    ) -> Result<Self> {
        if !params_valid(family, spec, a, b, c) {
            return Err(Error::InvalidConicParameters);
        }
        let beta = (family == ConicFamily::Elliptic).then(|| spec.pick_beta());
        Ok(Self { family, a, b, c, beta })
    }

    pub fn family(&self) -> ConicFamily {
        self.family
    }

    /// The parameter triple (a, b, c).
    pub fn params(&self) -> (FieldElement, FieldElement, FieldElement) {
        (self.a, self.b, self.c)
    }

    pub fn beta(&self) -> Option<FieldElement> {
        self.beta
    }

    pub fn contains(&self, spec: &FieldSpec, p: Point) -> bool {
        match self.family {
            ConicFamily::Parabolic => {
                // y = ax^2 + bx + c
                let rhs = spec.add(
                    spec.add(spec.mul(self.a, spec.mul(p.x, p.x)), spec.mul(self.b, p.x)),
                    self.c,
                );
                p.y == rhs
            }
            ConicFamily::Hyperbolic | ConicFamily::Elliptic => {
                let rhs = spec.add(
                    spec.add(spec.mul(self.a, p.x), spec.mul(self.b, p.y)),
                    self.c,
                );
                self.quadratic_part(spec, p) == rhs
            }
        }
    }

    /// The degree-2 part of the defining equation, evaluated at p. Only the
    /// hyperbolic and elliptic families place it on the left-hand side.
    fn quadratic_part(&self, spec: &FieldSpec, p: Point) -> FieldElement {
        match self.family {
            ConicFamily::Parabolic => spec.mul(self.a, spec.mul(p.x, p.x)),
            ConicFamily::Hyperbolic => spec.mul(p.x, p.y),
            ConicFamily::Elliptic => {
                let beta = self.beta.expect("elliptic conic carries beta");
                let xx = spec.mul(p.x, p.x);
                if spec.characteristic() == 2 {
                    // x^2 + xy + beta y^2
                    spec.add(
                        spec.add(xx, spec.mul(p.x, p.y)),
                        spec.mul(beta, spec.mul(p.y, p.y)),
                    )
                } else {
                    // x^2 - beta y^2
                    spec.sub(xx, spec.mul(beta, spec.mul(p.y, p.y)))
                }
            }
        }
    }

    /// Rational points of the conic, sorted by (x, y).
    pub fn points(&self, spec: &FieldSpec) -> Vec<Point> {
        match self.family {
            ConicFamily::Parabolic => spec
                .elements()
                .map(|x| {
                    let y = spec.add(
                        spec.add(spec.mul(self.a, spec.mul(x, x)), spec.mul(self.b, x)),
                        self.c,
                    );
                    Point::new(x, y)
                })
                .collect(),
            ConicFamily::Hyperbolic => {
                // xy = ax + by + c  <=>  y = (ax + c)/(x - b) for x != b
                spec.elements()
                    .filter(|&x| x != self.b)
                    .map(|x| {
                        let num = spec.add(spec.mul(self.a, x), self.c);
                        let den = spec.sub(x, self.b);
                        let y = spec.div(num, den).expect("x != b");
                        Point::new(x, y)
                    })
                    .collect()
            }
            ConicFamily::Elliptic => {
                let mut pts = Vec::with_capacity(spec.q() as usize + 1);
                for x in spec.elements() {
                    for y in spec.elements() {
                        let p = Point::new(x, y);
                        if self.contains(spec, p) {
                            pts.push(p);
                        }
                    }
                }
                debug_assert_eq!(pts.len(), spec.q() as usize + 1);
                pts
            }
        }
    }

    /// Formal gradient of the defining polynomial at p; characteristic-aware
    /// (d(x^2)/dx = 2x vanishes in characteristic 2).
    fn gradient(&self, spec: &FieldSpec, p: Point) -> (FieldElement, FieldElement) {
        let two = spec.two();
        match self.family {
            ConicFamily::Parabolic => {
                // f = ax^2 + bx + c - y
                let fx = spec.add(spec.mul(two, spec.mul(self.a, p.x)), self.b);
                let fy = spec.neg(spec.one());
                (fx, fy)
            }
            ConicFamily::Hyperbolic => {
                // f = xy - ax - by - c
                (spec.sub(p.y, self.a), spec.sub(p.x, self.b))
            }
            ConicFamily::Elliptic => {
                let beta = self.beta.expect("elliptic conic carries beta");
                if spec.characteristic() == 2 {
                    // f = x^2 + xy + beta y^2 + ax + by + c
                    (spec.add(p.y, self.a), spec.add(p.x, self.b))
                } else {
                    // f = x^2 - beta y^2 - ax - by - c
                    let fx = spec.sub(spec.mul(two, p.x), self.a);
                    let fy = spec.sub(spec.neg(spec.mul(two, spec.mul(beta, p.y))), self.b);
                    (fx, fy)
                }
            }
        }
    }

    /// The unique tangent line at a point of the conic.
    pub fn tangent_at(&self, spec: &FieldSpec, p: Point) -> Result<Line> {
        if !self.contains(spec, p) {
            return Err(Error::PointNotOnConic);
        }
        let (fx, fy) = self.gradient(spec, p);
        debug_assert!(!(fx.is_zero() && fy.is_zero()), "conic must be smooth at its points");
        if fy.is_zero() {
            Ok(Line::Vertical { x: p.x })
        } else {
            let slope = spec.div(spec.neg(fx), fy).expect("fy != 0");
            Ok(Line::through(spec, p, ParallelClass::Slope(slope)))
        }
    }

    /// One flag per rational point: (P, tangent at P).
    pub fn flags(&self, spec: &FieldSpec) -> Vec<Flag> {
        self.points(spec)
            .into_iter()
            .map(|p| Flag::new(p, self.tangent_at(spec, p).expect("point lies on conic")))
            .collect()
    }

    /// Image of the conic under translation by (u, v), computed on the
    /// parameter triple.
    pub fn translated(&self, spec: &FieldSpec, u: FieldElement, v: FieldElement) -> Conic {
        let (a, b, c) = (self.a, self.b, self.c);
        let (a2, b2, c2) = match self.family {
            ConicFamily::Parabolic => {
                let two = spec.two();
                let a2 = a;
                let b2 = spec.sub(b, spec.mul(two, spec.mul(a, u)));
                let c2 = spec.add(
                    spec.sub(spec.mul(a, spec.mul(u, u)), spec.mul(b, u)),
                    spec.add(c, v),
                );
                (a2, b2, c2)
            }
            ConicFamily::Hyperbolic => {
                let a2 = spec.add(a, v);
                let b2 = spec.add(b, u);
                let c2 = spec.sub(
                    spec.sub(spec.sub(c, spec.mul(a, u)), spec.mul(b, v)),
                    spec.mul(u, v),
                );
                (a2, b2, c2)
            }
            ConicFamily::Elliptic => {
                let beta = self.beta.expect("elliptic conic carries beta");
                if spec.characteristic() == 2 {
                    let a2 = spec.add(a, v);
                    let b2 = spec.add(b, u);
                    let c2 = spec.add(
                        spec.add(
                            spec.add(c, spec.mul(a, u)),
                            spec.add(spec.mul(b, v), spec.mul(u, u)),
                        ),
                        spec.add(spec.mul(u, v), spec.mul(beta, spec.mul(v, v))),
                    );
                    (a2, b2, c2)
                } else {
                    let two = spec.two();
                    let a2 = spec.add(a, spec.mul(two, u));
                    let b2 = spec.sub(b, spec.mul(two, spec.mul(beta, v)));
                    let c2 = spec.add(
                        spec.sub(
                            spec.sub(spec.sub(c, spec.mul(a, u)), spec.mul(b, v)),
                            spec.mul(u, u),
                        ),
                        spec.mul(beta, spec.mul(v, v)),
                    );
                    (a2, b2, c2)
                }
            }
        };
        let out = Conic { family: self.family, a: a2, b: b2, c: c2, beta: self.beta };
        debug_assert!(params_valid(out.family, spec, out.a, out.b, out.c));
        out
    }

    /// Image under the homothety about the origin with nonzero ratio.
    pub fn scaled_about_origin(&self, spec: &FieldSpec, ratio: FieldElement) -> Result<Conic> {
        let inv = spec.inv(ratio)?;
        let sq = spec.mul(ratio, ratio);
        let (a, b, c) = (self.a, self.b, self.c);
        let (a2, b2, c2) = match self.family {
            ConicFamily::Parabolic => (spec.mul(a, inv), b, spec.mul(c, ratio)),
            ConicFamily::Hyperbolic | ConicFamily::Elliptic => {
                (spec.mul(a, ratio), spec.mul(b, ratio), spec.mul(c, sq))
            }
        };
        let out = Conic { family: self.family, a: a2, b: b2, c: c2, beta: self.beta };
        debug_assert!(params_valid(out.family, spec, out.a, out.b, out.c));
        Ok(out)
    }

    /// Image under the homothety centred at an arbitrary rational point.
    pub fn scaled_about(
        &self,
        spec: &FieldSpec,
        center: Point,
        ratio: FieldElement,
    ) -> Result<Conic> {
        let moved = self.translated(spec, spec.neg(center.x), spec.neg(center.y));
        let scaled = moved.scaled_about_origin(spec, ratio)?;
        Ok(scaled.translated(spec, center.x, center.y))
    }
}

/// The single value of c that makes (a, b, c) singular, for the families
/// whose validity is a c-exclusion; None for the parabolic family.
fn forbidden_c(
    family: ConicFamily,
    spec: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
) -> Option<FieldElement> {
    match family {
        ConicFamily::Parabolic => None,
        ConicFamily::Hyperbolic => Some(spec.neg(spec.mul(a, b))),
        ConicFamily::Elliptic => {
            let beta = spec.pick_beta();
            if spec.characteristic() == 2 {
                // the curve is singular at (b, a) exactly when
                // c = beta a^2 + ab + b^2
                Some(spec.add(
                    spec.add(spec.mul(beta, spec.mul(a, a)), spec.mul(a, b)),
                    spec.mul(b, b),
                ))
            } else {
                // c = b^2/(4 beta) - a^2/4
                let four = spec.mul(spec.two(), spec.two());
                let t1 = spec.div(spec.mul(b, b), spec.mul(four, beta)).expect("4*beta != 0");
                let t2 = spec.div(spec.mul(a, a), four).expect("4 != 0");
                Some(spec.sub(t1, t2))
            }
        }
    }
}

fn params_valid(
    family: ConicFamily,
    spec: &FieldSpec,
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
) -> bool {
    match forbidden_c(family, spec, a, b) {
        None => !a.is_zero(),
        Some(bad) => c != bad,
    }
}

/// All q^3 - q^2 conics of the family, in lexicographic (a, b, c) order.
pub fn enumerate_conics(family: ConicFamily, spec: &FieldSpec) -> Vec<Conic> {
    let beta = (family == ConicFamily::Elliptic).then(|| spec.pick_beta());
    let mut out = Vec::with_capacity((spec.q().pow(3) - spec.q().pow(2)) as usize);
    for a in spec.elements() {
        for b in spec.elements() {
            for c in spec.elements() {
                if params_valid(family, spec, a, b, c) {
                    out.push(Conic { family, a, b, c, beta });
                }
            }
        }
    }
    out
}

/// The q - 1 conics of the family incident with the flag, i.e. containing
/// its point with its line as tangent there. Fails if the flag's line
/// direction is not admissible for the family.
pub fn incident_conics(
    family: ConicFamily,
    spec: &FieldSpec,
    flag: &Flag,
) -> Result<Vec<Conic>> {
    if !family.line_admissible(&flag.line) {
        return Err(Error::ForbiddenLineDirection);
    }
    Ok(enumerate_conics(family, spec)
        .into_iter()
        .filter(|conic| {
            conic.contains(spec, flag.point)
                && conic.tangent_at(spec, flag.point).expect("point on conic") == flag.line
        })
        .collect())
}

/// If the two conics are tangent at a common rational point, the shared
/// flag. Two conics of the same family sharing a flag meet nowhere else.
pub fn tangency_flag(spec: &FieldSpec, c1: &Conic, c2: &Conic) -> Option<Flag> {
    if c1 == c2 {
        return None;
    }
    let pts2: Vec<Point> = c2.points(spec);
    for p in c1.points(spec) {
        if pts2.binary_search(&p).is_ok() {
            let t1 = c1.tangent_at(spec, p).expect("point on c1");
            let t2 = c2.tangent_at(spec, p).expect("point on c2");
            if t1 == t2 {
                return Some(Flag::new(p, t1));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_new;

    #[test]
    fn conic_counts_match_q3_minus_q2() {
        let cases = [(ConicFamily::Parabolic, 5u32, 100), (ConicFamily::Hyperbolic, 4, 48), (ConicFamily::Elliptic, 9, 648)];
        for (family, q, expected) in cases {
            let spec = field_new(q).unwrap();
            assert_eq!(enumerate_conics(family, &spec).len(), expected);
        }
        for q in [4, 5, 7, 8] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                assert_eq!(
                    enumerate_conics(family, &spec).len() as u32,
                    q * q * (q - 1),
                );
            }
        }
    }

    #[test]
    fn parabola_points_over_f5() {
        let spec = field_new(5).unwrap();
        let conic = Conic::new(
            ConicFamily::Parabolic,
            &spec,
            spec.one(),
            spec.zero(),
            spec.zero(),
        )
        .unwrap();
        let pts: Vec<(usize, usize)> =
            conic.points(&spec).into_iter().map(|p| (p.x.index(), p.y.index())).collect();
        assert_eq!(pts, vec![(0, 0), (1, 1), (2, 4), (3, 4), (4, 1)]);
    }

    #[test]
    fn point_counts_per_family() {
        for q in [4u32, 5, 7] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                for conic in enumerate_conics(family, &spec) {
                    assert_eq!(conic.points(&spec).len(), family.points_per_conic(q));
                }
            }
        }
    }

    #[test]
    fn tangent_of_parabola_over_f5() {
        let spec = field_new(5).unwrap();
        let conic =
            Conic::new(ConicFamily::Parabolic, &spec, spec.one(), spec.zero(), spec.zero())
                .unwrap();
        let p = Point::new(spec.one(), spec.one());
        let tangent = conic.tangent_at(&spec, p).unwrap();
        assert_eq!(
            tangent,
            Line::Slanted { slope: spec.element(2), intercept: spec.element(4) }
        );
        assert!(conic.tangent_at(&spec, Point::new(spec.zero(), spec.one())).is_err());
    }

    #[test]
    fn parabola_tangents_in_characteristic_two_share_slope_b() {
        // with q even, d(ax^2+bx+c)/dx = b, so all tangents have slope b
        let spec = field_new(4).unwrap();
        for conic in enumerate_conics(ConicFamily::Parabolic, &spec) {
            let (_, b, _) = conic.params();
            for flag in conic.flags(&spec) {
                assert_eq!(flag.line.parallel_class(), ParallelClass::Slope(b));
            }
        }
    }

    #[test]
    fn tangent_of_hyperbola_at_origin() {
        // xy = x + y at (0,0) has tangent y = -x
        let spec = field_new(5).unwrap();
        let conic =
            Conic::new(ConicFamily::Hyperbolic, &spec, spec.one(), spec.one(), spec.zero())
                .unwrap();
        let origin = Point::new(spec.zero(), spec.zero());
        let tangent = conic.tangent_at(&spec, origin).unwrap();
        assert_eq!(
            tangent,
            Line::Slanted { slope: spec.from_int(-1), intercept: spec.zero() }
        );
    }

    #[test]
    fn tangent_meets_conic_only_at_the_point_of_tangency() {
        for q in [4u32, 5] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                for conic in enumerate_conics(family, &spec) {
                    for flag in conic.flags(&spec) {
                        let on_both = flag
                            .line
                            .points(&spec)
                            .into_iter()
                            .filter(|&p| conic.contains(&spec, p))
                            .count();
                        assert_eq!(on_both, 1, "{family:?} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn flag_direction_restrictions() {
        for q in [4u32, 5, 7, 8] {
            let spec = field_new(q).unwrap();
            for conic in enumerate_conics(ConicFamily::Parabolic, &spec) {
                assert!(conic.flags(&spec).iter().all(|f| !f.line.is_vertical()));
            }
            for conic in enumerate_conics(ConicFamily::Hyperbolic, &spec) {
                assert!(conic
                    .flags(&spec)
                    .iter()
                    .all(|f| !f.line.is_vertical() && !f.line.is_horizontal()));
            }
        }
    }

    #[test]
    fn incident_conics_with_horizontal_flag_at_origin() {
        // parabolic conics tangent to y = 0 at the origin are y = t x^2
        let spec = field_new(5).unwrap();
        let flag = Flag::new(
            Point::new(spec.zero(), spec.zero()),
            Line::Slanted { slope: spec.zero(), intercept: spec.zero() },
        );
        let conics = incident_conics(ConicFamily::Parabolic, &spec, &flag).unwrap();
        let mut params: Vec<_> = conics
            .iter()
            .map(|c| (c.params().0.index(), c.params().1.index(), c.params().2.index()))
            .collect();
        params.sort();
        assert_eq!(params, vec![(1, 0, 0), (2, 0, 0), (3, 0, 0), (4, 0, 0)]);
    }

    #[test]
    fn incident_conics_hyperbolic_antidiagonal_flag() {
        // hyperbolic conics tangent to y = -x at the origin are xy = t(x+y),
        // consistent with xy = x + y having tangent y = -x there
        let spec = field_new(7).unwrap();
        let flag = Flag::new(
            Point::new(spec.zero(), spec.zero()),
            Line::Slanted { slope: spec.from_int(-1), intercept: spec.zero() },
        );
        let conics = incident_conics(ConicFamily::Hyperbolic, &spec, &flag).unwrap();
        assert_eq!(conics.len(), 6);
        for conic in &conics {
            let (a, b, c) = conic.params();
            assert_eq!(a, b);
            assert!(c.is_zero());
            assert!(!a.is_zero());
        }
    }

    #[test]
    fn every_admissible_flag_is_incident_with_q_minus_one_conics() {
        for q in [4u32, 5] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                for x in spec.elements().take(2) {
                    let p = Point::new(x, spec.one());
                    for class in ParallelClass::all(&spec) {
                        if !family.class_admissible(class) {
                            continue;
                        }
                        let flag = Flag::new(p, Line::through(&spec, p, class));
                        let conics = incident_conics(family, &spec, &flag).unwrap();
                        assert_eq!(conics.len(), q as usize - 1);
                        for conic in &conics {
                            assert!(conic.flags(&spec).contains(&flag));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vertical_flag_rejected_for_parabolic_family() {
        let spec = field_new(5).unwrap();
        let p = Point::new(spec.zero(), spec.zero());
        let flag = Flag::new(p, Line::Vertical { x: spec.zero() });
        assert_eq!(
            incident_conics(ConicFamily::Parabolic, &spec, &flag).unwrap_err(),
            Error::ForbiddenLineDirection
        );
        assert_eq!(
            incident_conics(ConicFamily::Hyperbolic, &spec, &flag).unwrap_err(),
            Error::ForbiddenLineDirection
        );
        assert_eq!(incident_conics(ConicFamily::Elliptic, &spec, &flag).unwrap().len(), 4);
    }

    #[test]
    fn pairs_of_conics_meet_at_most_twice() {
        // and a shared flag excludes any further common point
        for q in [4u32, 5] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                let conics = enumerate_conics(family, &spec);
                let points: Vec<Vec<Point>> =
                    conics.iter().map(|c| c.points(&spec)).collect();
                for i in 0..conics.len() {
                    for j in i + 1..conics.len() {
                        let common: Vec<Point> = points[i]
                            .iter()
                            .copied()
                            .filter(|p| points[j].binary_search(p).is_ok())
                            .collect();
                        assert!(common.len() <= 2, "{family:?} q={q}");
                        if let Some(flag) = tangency_flag(&spec, &conics[i], &conics[j]) {
                            assert_eq!(common, vec![flag.point]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let spec = field_new(5).unwrap();
        assert_eq!(
            Conic::new(ConicFamily::Parabolic, &spec, spec.zero(), spec.one(), spec.one())
                .unwrap_err(),
            Error::InvalidConicParameters
        );
        // xy = x + y + c is singular exactly at c = -1
        assert!(Conic::new(
            ConicFamily::Hyperbolic,
            &spec,
            spec.one(),
            spec.one(),
            spec.from_int(-1)
        )
        .is_err());
    }

    #[test]
    fn translation_and_homothety_preserve_membership() {
        for q in [4u32, 5] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                let conics = enumerate_conics(family, &spec);
                let u = spec.element(1);
                let v = spec.element(q as usize - 1);
                for conic in conics.iter().take(12) {
                    let translated = conic.translated(&spec, u, v);
                    // the parameter map must agree with the pointwise image
                    let image: Vec<Point> = conic
                        .points(&spec)
                        .iter()
                        .map(|p| Point::new(spec.add(p.x, u), spec.add(p.y, v)))
                        .collect();
                    let mut image_sorted = image.clone();
                    image_sorted.sort();
                    assert_eq!(translated.points(&spec), image_sorted);

                    let center = Point::new(spec.one(), spec.zero());
                    let ratio = spec.element(q as usize - 1);
                    let scaled = conic.scaled_about(&spec, center, ratio).unwrap();
                    let image: Vec<Point> = conic
                        .points(&spec)
                        .iter()
                        .map(|p| {
                            Point::new(
                                spec.add(center.x, spec.mul(ratio, spec.sub(p.x, center.x))),
                                spec.add(center.y, spec.mul(ratio, spec.sub(p.y, center.y))),
                            )
                        })
                        .collect();
                    let mut image_sorted = image.clone();
                    image_sorted.sort();
                    assert_eq!(scaled.points(&spec), image_sorted);
                }
            }
        }
    }
}
