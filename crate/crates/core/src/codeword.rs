//! Codewords as flag sets, the parallel-class involution driving the
//! explicit weight-2q codeword construction, and the exhaustive
//! minimum-distance oracle for small dimensions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::geometry::{incident_conics, ConicFamily, Flag, Line, ParallelClass, Point};
use crate::gf2::{nullspace_basis, BitVector, SparseBinaryMatrix};
use crate::incidence::IncidenceStructure;

/// A binary word over the points of an incidence structure, stored as its
/// support: the indices of the flags where it is 1.
#[derive(Debug, Clone)]
pub struct FlagWord<'a> {
    structure: &'a IncidenceStructure,
    support: Vec<usize>,
}

impl<'a> FlagWord<'a> {
    pub fn new(structure: &'a IncidenceStructure, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        if let Some(&i) = support.last() {
            if i >= structure.n_points() {
                return Err(Error::EntryOutOfBounds {
                    row: 0,
                    col: i,
                    n_cols: structure.n_points(),
                });
            }
        }
        Ok(Self { structure, support })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn flags(&self) -> Vec<Flag> {
        self.support.iter().map(|&i| self.structure.points()[i]).collect()
    }

    pub fn to_bitvector(&self) -> BitVector {
        BitVector::from_support(self.structure.n_points(), &self.support)
    }

    /// A word is a codeword exactly when every block contains an even
    /// number of its flags.
    pub fn is_codeword(&self) -> bool {
        let mut marked = vec![false; self.structure.n_points()];
        for &i in &self.support {
            marked[i] = true;
        }
        self.structure
            .blocks()
            .iter()
            .all(|block| block.members().iter().filter(|&&p| marked[p]).count() % 2 == 0)
    }
}

/// The involution on parallel classes induced by second intersections:
/// take any point P on a line of the base class, any conic of the family
/// tangent at P to a line of `class_l`, and return the class of the
/// tangent at the conic's second intersection with the base line. The
/// result depends on neither choice.
pub fn psi_involution(
    family: ConicFamily,
    spec: &FieldSpec,
    class_l0: ParallelClass,
    class_l: ParallelClass,
) -> Result<ParallelClass> {
    if class_l == class_l0 {
        return Err(Error::ClassEqualsBase);
    }
    if !family.class_admissible(class_l0) || !family.class_admissible(class_l) {
        return Err(Error::ForbiddenClass);
    }
    let origin = Point::new(spec.zero(), spec.zero());
    psi_at(family, spec, class_l0, class_l, origin, 0)
}

/// The involution computed through an explicit point of the base line and
/// an explicit choice of incident conic; exposed so tests can quantify
/// over all choices.
pub(crate) fn psi_at(
    family: ConicFamily,
    spec: &FieldSpec,
    class_l0: ParallelClass,
    class_l: ParallelClass,
    p: Point,
    conic_choice: usize,
) -> Result<ParallelClass> {
    let l0 = Line::through(spec, p, class_l0);
    let l = Line::through(spec, p, class_l);
    let conics = incident_conics(family, spec, &Flag::new(p, l))?;
    let conic = conics[conic_choice % conics.len()];
    // the conic is transverse to l0 at p, so it meets l0 at exactly one
    // further rational point
    let second: Vec<Point> = conic
        .points(spec)
        .into_iter()
        .filter(|&pt| pt != p && l0.contains(spec, pt))
        .collect();
    assert_eq!(second.len(), 1, "conic meets the base line at exactly one further point");
    let tangent = conic.tangent_at(spec, second[0]).expect("point lies on conic");
    Ok(tangent.parallel_class())
}

/// Builds a weight-2q codeword from a base line and a parallel class: two
/// flags per point of the base line, one in `class_l` and one in its
/// partner class. The partner is the involution image when that differs
/// from `class_l`; otherwise the smallest admissible involution-fixed
/// class distinct from it.
pub fn min_weight_codeword<'a>(
    structure: &'a IncidenceStructure,
    l0: Line,
    class_l: ParallelClass,
) -> Result<FlagWord<'a>> {
    let family = structure.family();
    let spec = structure.spec();
    if !family.line_admissible(&l0) {
        return Err(Error::ForbiddenLineDirection);
    }
    let class_l0 = l0.parallel_class();
    let class_m = partner_class(family, spec, class_l0, class_l)?;

    let mut support = Vec::with_capacity(2 * spec.q() as usize);
    for p in l0.points(spec) {
        for class in [class_l, class_m] {
            let flag = Flag::new(p, Line::through(spec, p, class));
            support.push(
                structure
                    .flag_index(&flag)
                    .expect("admissible classes index into the structure"),
            );
        }
    }
    FlagWord::new(structure, support)
}

fn partner_class(
    family: ConicFamily,
    spec: &FieldSpec,
    class_l0: ParallelClass,
    class_l: ParallelClass,
) -> Result<ParallelClass> {
    let class_m = psi_involution(family, spec, class_l0, class_l)?;
    if class_m != class_l {
        return Ok(class_m);
    }
    // the involution fixes class_l (for the parabolic family over even q it
    // is the identity); pair it with the smallest admissible class that the
    // involution also fixes
    ParallelClass::all(spec)
        .into_iter()
        .filter(|&c| c != class_l0 && c != class_l && family.class_admissible(c))
        .find(|&c| psi_involution(family, spec, class_l0, c) == Ok(c))
        .ok_or(Error::DegenerateClassPair)
}

/// Default dimension cap for the exhaustive distance search.
pub const EXHAUSTIVE_DIMENSION_LIMIT: usize = 24;

/// Exact minimum distance by walking the whole nullspace in Gray-code
/// order, one basis XOR per codeword.
pub fn min_distance_exhaustive(h: &SparseBinaryMatrix) -> Result<usize> {
    min_distance_exhaustive_with_limit(h, EXHAUSTIVE_DIMENSION_LIMIT)
}

/// Same search with an explicit dimension cap; cost is 2^dim words.
pub fn min_distance_exhaustive_with_limit(
    h: &SparseBinaryMatrix,
    limit: usize,
) -> Result<usize> {
    let basis = nullspace_basis(h);
    let dim = basis.len();
    if dim == 0 {
        return Err(Error::EmptyCode);
    }
    if dim > limit {
        return Err(Error::DimensionTooLarge { dim, limit });
    }

    let total: u64 = 1 << dim;
    // partition the Gray walk over the top bits; each worker rebuilds its
    // starting word from the Gray code of its first index
    let n_chunks: u64 = if dim <= 16 { 1 } else { 256 };
    let chunk_len = total / n_chunks;
    let min = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = (chunk * chunk_len).max(1);
            let end = (chunk + 1) * chunk_len;
            let mut word = BitVector::zeros(h.n_cols());
            let mut gray = (start - 1) ^ ((start - 1) >> 1);
            while gray != 0 {
                let bit = gray.trailing_zeros() as usize;
                word.xor_assign(&basis[bit]);
                gray &= gray - 1;
            }
            let mut local_min = usize::MAX;
            for i in start..end {
                word.xor_assign(&basis[i.trailing_zeros() as usize]);
                local_min = local_min.min(word.weight());
            }
            local_min
        })
        .min()
        .expect("at least one chunk");
    Ok(min)
}
