//! Binary LDPC codes from incidence structures of plane conics.
//!
//! Three families of smooth affine conics over F_q (4 <= q <= 32) are
//! distinguished by their points at infinity. Lifting each family to the
//! plane blown up at all of its rational points — realised combinatorially
//! as flags (point, line through it) — and adding the exceptional divisors
//! as extra blocks yields regular incidence structures in which two points
//! share at most one block. Their incidence matrices are redundant sparse
//! parity-check matrices of binary codes with minimum distance 2q and
//! girth 6 or 8, decoded here with log-domain sum-product on the AWGN
//! channel against regular band-permutation ensemble baselines.
//!
//! Modules follow the pipeline: [`field`] (table-driven F_q arithmetic),
//! [`geometry`] (conics, tangents, flags), [`incidence`] (structures and
//! parity-check matrices), [`tanner`] (girth and short cycles), [`gf2`]
//! (rank, nullspace, dimensions), [`codeword`] (minimum-distance tools),
//! [`sim`] (decoder and channel simulations), [`tables`] (known code
//! parameters).

pub mod codeword;
pub mod error;
pub mod field;
pub mod geometry;
pub mod gf2;
pub mod incidence;
pub mod sim;
pub mod tables;
pub mod tanner;

pub use codeword::{
    min_distance_exhaustive, min_distance_exhaustive_with_limit, min_weight_codeword,
    psi_involution, FlagWord, EXHAUSTIVE_DIMENSION_LIMIT,
};
pub use error::{Error, Result};
pub use field::{field_new, FieldElement, FieldSpec, SUPPORTED_ORDERS};
pub use geometry::{
    enumerate_conics, incident_conics, tangency_flag, Conic, ConicFamily, Flag, Line,
    ParallelClass, Point,
};
pub use gf2::{
    code_dimension, conjectured_dimension, nullspace_basis, rank_gf2, BitMatrix, BitVector,
    SparseBinaryMatrix,
};
pub use incidence::{
    build_structure, incidence_matrix, kappa, max_kappa_sampled, Block, BlockKind,
    IncidenceStructure,
};
pub use sim::{
    gallager_code, simulate_ber, sum_product_decode, ChannelPoint, DecodeResult,
    DecoderWorkspace, GallagerSpec, PointStats, SimulationConfig, SimulationResult,
    SumProductDecoder,
};
pub use tanner::{count_6_cycles, count_8_cycles, find_c3_configurations, girth, BipartiteGraph};
