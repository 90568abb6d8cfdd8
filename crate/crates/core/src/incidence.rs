//! The incidence structures built from the three conic families on the
//! plane blown up at all its rational points.
//!
//! Points of a structure are the admissible flags (P, L): every flag for
//! the elliptic family, flags with non-vertical L for the parabolic family,
//! and flags with neither vertical nor horizontal L for the hyperbolic one.
//! Blocks are the q^3 - q^2 conic strict transforms plus the q^2
//! exceptional divisors. The strict transform of a conic is represented by
//! its flag set, and the exceptional divisor over P by the set of
//! admissible flags based at P; the blown-up surface itself is never
//! materialised.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::geometry::{
    enumerate_conics, incident_conics, tangency_flag, Conic, ConicFamily, Flag, Line,
    ParallelClass, Point,
};
use crate::gf2::SparseBinaryMatrix;

/// A block: either the strict transform of a conic or an exceptional
/// divisor, stored with the sorted indices of its member points.
#[derive(Debug, Clone)]
pub struct Block {
    kind: BlockKind,
    members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum BlockKind {
    Conic(Conic),
    Exceptional(Point),
}

impl Block {
    pub fn kind(&self) -> &BlockKind {
        &self.kind
    }

    /// Sorted point indices incident with the block.
    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

/// One of the incidence structures I_1(q), I_2(q), I_3(q).
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    family: ConicFamily,
    spec: FieldSpec,
    points: Vec<Flag>,
    blocks: Vec<Block>,
}

/// Builds the incidence structure of the family over F_q.
pub fn build_structure(family: ConicFamily, spec: &FieldSpec) -> IncidenceStructure {
    IncidenceStructure::build(family, spec)
}

impl IncidenceStructure {
    pub fn build(family: ConicFamily, spec: &FieldSpec) -> Self {
        let q = spec.q() as usize;
        let lines_per_point = family.lines_per_point(spec.q());

        let classes = admissible_classes(family, spec);
        let mut points = Vec::with_capacity(q * q * lines_per_point);
        for x in spec.elements() {
            for y in spec.elements() {
                let p = Point::new(x, y);
                for &class in &classes {
                    points.push(Flag::new(p, Line::through(spec, p, class)));
                }
            }
        }

        // conic blocks, in enumeration order; per-conic flag computation is
        // pure, so it parallelises cleanly
        let conics = enumerate_conics(family, spec);
        let mut blocks: Vec<Block> = conics
            .into_par_iter()
            .map(|conic| {
                let members: Vec<usize> = conic
                    .flags(spec)
                    .into_iter()
                    .map(|flag| {
                        flag_index(family, spec, &flag)
                            .expect("conic flags are admissible for their own family")
                    })
                    .collect();
                debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
                Block { kind: BlockKind::Conic(conic), members }
            })
            .collect();

        // exceptional divisors, one per rational point of the plane; its
        // members are the admissible flags based there, which occupy a
        // contiguous index range
        for x in spec.elements() {
            for y in spec.elements() {
                let p = Point::new(x, y);
                let base = (p.x.index() * q + p.y.index()) * lines_per_point;
                let members: Vec<usize> = (base..base + lines_per_point).collect();
                blocks.push(Block { kind: BlockKind::Exceptional(p), members });
            }
        }

        Self { family, spec: spec.clone(), points, blocks }
    }

    pub fn family(&self) -> ConicFamily {
        self.family
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn points(&self) -> &[Flag] {
        &self.points
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Index of a flag in the point list, or None when the flag is not a
    /// point of this structure.
    pub fn flag_index(&self, flag: &Flag) -> Option<usize> {
        flag_index(self.family, &self.spec, flag)
    }

    /// Index of the exceptional divisor over a point of the plane.
    pub fn exceptional_block_index(&self, p: Point) -> usize {
        let q = self.spec.q() as usize;
        q * q * (q - 1) + p.x.index() * q + p.y.index()
    }

    /// The parity-check matrix: one row per block, one column per point.
    pub fn incidence_matrix(&self) -> SparseBinaryMatrix {
        let rows: Vec<Vec<usize>> = self.blocks.iter().map(|b| b.members.clone()).collect();
        SparseBinaryMatrix::new(self.blocks.len(), self.points.len(), rows)
            .expect("block members are sorted in-range point indices")
    }
}

/// Convenience wrapper matching the structure method.
pub fn incidence_matrix(structure: &IncidenceStructure) -> SparseBinaryMatrix {
    structure.incidence_matrix()
}

fn admissible_classes(family: ConicFamily, spec: &FieldSpec) -> Vec<ParallelClass> {
    ParallelClass::all(spec)
        .into_iter()
        .filter(|&class| family.class_admissible(class))
        .collect()
}

/// Arithmetic flag -> point-index map. Points are ordered by
/// (x, y, canonical line key), and the admissible lines through a fixed
/// point are exactly the slanted lines with admissible slope followed by
/// the vertical one (elliptic family only).
fn flag_index(family: ConicFamily, spec: &FieldSpec, flag: &Flag) -> Option<usize> {
    if !flag.line.contains(spec, flag.point) {
        return None;
    }
    let q = spec.q() as usize;
    let slot = match flag.line {
        Line::Slanted { slope, .. } => match family {
            ConicFamily::Parabolic | ConicFamily::Elliptic => slope.index(),
            ConicFamily::Hyperbolic => {
                if slope.is_zero() {
                    return None;
                }
                slope.index() - 1
            }
        },
        Line::Vertical { .. } => {
            if family != ConicFamily::Elliptic {
                return None;
            }
            q
        }
    };
    let point_rank = flag.point.x.index() * q + flag.point.y.index();
    Some(point_rank * family.lines_per_point(spec.q()) + slot)
}

/// kappa(q, P, L, C): the number of conics incident with the flag (P, L)
/// that share a flag of the structure with the avoiding conic C. The flag's
/// line must be admissible and C must avoid P.
pub fn kappa(
    family: ConicFamily,
    spec: &FieldSpec,
    flag: &Flag,
    conic: &Conic,
) -> Result<usize> {
    if conic.contains(spec, flag.point) {
        return Err(Error::PointOnConic);
    }
    let through_flag = incident_conics(family, spec, flag)?;
    // a shared flag of two conics of these families is automatically
    // admissible: parabolic tangents are never vertical and hyperbolic
    // tangents are never vertical or horizontal
    Ok(through_flag
        .iter()
        .filter(|other| tangency_flag(spec, conic, other).is_some())
        .count())
}

/// Maximum kappa observed over every flag of the structure, sampling up to
/// `samples_per_flag` avoiding conics per flag (all of them when fewer
/// exist). Deterministic for a given seed.
pub fn max_kappa_sampled(
    family: ConicFamily,
    spec: &FieldSpec,
    samples_per_flag: usize,
    seed: u64,
) -> usize {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let conics = enumerate_conics(family, spec);
    let flag_lists: Vec<Vec<Flag>> = conics.iter().map(|c| c.flags(spec)).collect();
    let mut incident: std::collections::HashMap<Flag, Vec<u32>> = std::collections::HashMap::new();
    for (i, flags) in flag_lists.iter().enumerate() {
        for &f in flags {
            incident.entry(f).or_default().push(i as u32);
        }
    }
    let classes: Vec<ParallelClass> = ParallelClass::all(spec)
        .into_iter()
        .filter(|&c| family.class_admissible(c))
        .collect();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut max_k = 0;
    for x in spec.elements() {
        for y in spec.elements() {
            let p = Point::new(x, y);
            let mut avoiding: Vec<u32> = (0..conics.len() as u32)
                .filter(|&i| !conics[i as usize].contains(spec, p))
                .collect();
            if avoiding.len() > samples_per_flag {
                avoiding.shuffle(&mut rng);
                avoiding.truncate(samples_per_flag);
            }
            for &class in &classes {
                let flag = Flag::new(p, Line::through(spec, p, class));
                let Some(through) = incident.get(&flag) else { continue };
                for &ci in &avoiding {
                    let k = through
                        .iter()
                        .filter(|&&cj| {
                            shares_sorted_flag(&flag_lists[ci as usize], &flag_lists[cj as usize])
                        })
                        .count();
                    max_k = max_k.max(k);
                }
            }
        }
    }
    max_k
}

/// Whether two sorted flag lists contain a common flag (same point, same
/// tangent line).
fn shares_sorted_flag(a: &[Flag], b: &[Flag]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].point.cmp(&b[j].point) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i].line == b[j].line {
                    return true;
                }
                i += 1;
                j += 1;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_new;
    use rand::seq::IteratorRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn structure_sizes() {
        let cases = [
            (ConicFamily::Parabolic, 4u32, 64usize, 64usize),
            (ConicFamily::Hyperbolic, 5, 100, 125),
            (ConicFamily::Elliptic, 4, 80, 64),
        ];
        for (family, q, n_points, n_blocks) in cases {
            let spec = field_new(q).unwrap();
            let s = IncidenceStructure::build(family, &spec);
            assert_eq!(s.n_points(), n_points);
            assert_eq!(s.n_blocks(), n_blocks);
        }
    }

    #[test]
    fn regularity_small_orders() {
        for q in [4u32, 5] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                let s = IncidenceStructure::build(family, &spec);
                let block_size = family.points_per_conic(q);
                let mut degrees = vec![0usize; s.n_points()];
                for block in s.blocks() {
                    assert_eq!(block.members().len(), block_size);
                    for &p in block.members() {
                        degrees[p] += 1;
                    }
                }
                assert!(degrees.iter().all(|&d| d == q as usize));
            }
        }
    }

    #[test]
    fn matrix_shapes_and_weights() {
        let spec4 = field_new(4).unwrap();
        let m = IncidenceStructure::build(ConicFamily::Parabolic, &spec4).incidence_matrix();
        assert_eq!((m.n_rows(), m.n_cols()), (64, 64));
        assert!(m.row_weights().iter().all(|&w| w == 4));
        assert!(m.col_weights().iter().all(|&w| w == 4));

        let spec8 = field_new(8).unwrap();
        let m = IncidenceStructure::build(ConicFamily::Hyperbolic, &spec8).incidence_matrix();
        assert_eq!((m.n_rows(), m.n_cols()), (512, 448));
        assert!(m.row_weights().iter().all(|&w| w == 7));
        assert!(m.col_weights().iter().all(|&w| w == 8));

        let spec5 = field_new(5).unwrap();
        let m = IncidenceStructure::build(ConicFamily::Elliptic, &spec5).incidence_matrix();
        assert_eq!((m.n_rows(), m.n_cols()), (125, 150));
        assert!(m.row_weights().iter().all(|&w| w == 6));
        assert!(m.col_weights().iter().all(|&w| w == 5));
    }

    #[test]
    fn flag_index_round_trip() {
        for q in [4u32, 5] {
            let spec = field_new(q).unwrap();
            for family in ConicFamily::ALL {
                let s = IncidenceStructure::build(family, &spec);
                for (i, flag) in s.points().iter().enumerate() {
                    assert_eq!(s.flag_index(flag), Some(i));
                }
                // a vertical flag is only a point of the elliptic structure
                let vertical = Flag::new(
                    Point::new(spec.zero(), spec.zero()),
                    Line::Vertical { x: spec.zero() },
                );
                assert_eq!(
                    s.flag_index(&vertical).is_some(),
                    family == ConicFamily::Elliptic
                );
            }
        }
    }

    #[test]
    fn exceptional_block_lookup() {
        let spec = field_new(5).unwrap();
        for family in ConicFamily::ALL {
            let s = IncidenceStructure::build(family, &spec);
            for x in spec.elements() {
                for y in spec.elements() {
                    let p = Point::new(x, y);
                    let block = &s.blocks()[s.exceptional_block_index(p)];
                    assert!(matches!(block.kind(), BlockKind::Exceptional(q) if *q == p));
                }
            }
        }
    }

    #[test]
    fn free_function_wrappers_agree_with_methods() {
        let spec = field_new(4).unwrap();
        let s = build_structure(ConicFamily::Parabolic, &spec);
        assert_eq!(incidence_matrix(&s), s.incidence_matrix());
    }

    #[test]
    fn exceptional_divisors_are_pairwise_disjoint() {
        let spec = field_new(4).unwrap();
        for family in ConicFamily::ALL {
            let s = IncidenceStructure::build(family, &spec);
            let exceptional: Vec<&Block> = s
                .blocks()
                .iter()
                .filter(|b| matches!(b.kind(), BlockKind::Exceptional(_)))
                .collect();
            assert_eq!(exceptional.len(), 16);
            let mut seen = std::collections::HashSet::new();
            for block in exceptional {
                for &p in block.members() {
                    assert!(seen.insert(p));
                }
            }
        }
    }

    #[test]
    fn kappa_rejects_points_on_the_conic() {
        let spec = field_new(5).unwrap();
        let conic =
            Conic::new(ConicFamily::Parabolic, &spec, spec.one(), spec.zero(), spec.zero())
                .unwrap();
        let origin = Point::new(spec.zero(), spec.zero());
        let flag = Flag::new(
            origin,
            Line::Slanted { slope: spec.zero(), intercept: spec.zero() },
        );
        assert_eq!(
            kappa(ConicFamily::Parabolic, &spec, &flag, &conic).unwrap_err(),
            Error::PointOnConic
        );
    }

    #[test]
    fn kappa_parabolic_even_attains_q_minus_two() {
        let spec = field_new(4).unwrap();
        let origin = Point::new(spec.zero(), spec.zero());
        let flag = Flag::new(
            origin,
            Line::Slanted { slope: spec.zero(), intercept: spec.zero() },
        );
        let mut max = 0;
        for conic in enumerate_conics(ConicFamily::Parabolic, &spec) {
            if conic.contains(&spec, origin) {
                continue;
            }
            max = max.max(kappa(ConicFamily::Parabolic, &spec, &flag, &conic).unwrap());
        }
        assert_eq!(max, 2); // q - 2
    }

    #[test]
    fn kappa_parabolic_odd_is_at_most_one() {
        let spec = field_new(5).unwrap();
        let origin = Point::new(spec.zero(), spec.zero());
        let flag = Flag::new(
            origin,
            Line::Slanted { slope: spec.zero(), intercept: spec.zero() },
        );
        let mut max = 0;
        for conic in enumerate_conics(ConicFamily::Parabolic, &spec) {
            if conic.contains(&spec, origin) {
                continue;
            }
            let k = kappa(ConicFamily::Parabolic, &spec, &flag, &conic).unwrap();
            assert!(k <= 1);
            max = max.max(k);
        }
        assert_eq!(max, 1);
    }

    #[test]
    fn kappa_elliptic_even_is_at_most_one_sampled() {
        let spec = field_new(8).unwrap();
        let s = IncidenceStructure::build(ConicFamily::Elliptic, &spec);
        let conics = enumerate_conics(ConicFamily::Elliptic, &spec);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for flag in s.points().iter().choose_multiple(&mut rng, 10) {
            for conic in conics
                .iter()
                .filter(|c| !c.contains(&spec, flag.point))
                .choose_multiple(&mut rng, 30)
            {
                assert!(kappa(ConicFamily::Elliptic, &spec, flag, conic).unwrap() <= 1);
            }
        }
    }
}
