//! Complete isomorphisms from a single-pair oracle.
//!
//! Each loop asks the oracle for one matched pair of the current gadget
//! graphs, maps the answer back onto old vertices, fixes that pair, deletes
//! it, and attaches a clique of the current size `i` to every surviving old
//! neighbour. Clique sizes grow by one per loop, so any later isomorphism must
//! respect the adjacency history of every pair already fixed.

mod engine;
mod enumerate;
mod fixture;
mod gadget;
mod oracle;
mod refine;

pub use engine::{
    complete_isomorphism, CaseTag, CliqueAdded, IsoEngine, IsoLoopRecord, IsoOutcome, OpCounter,
    Resolution, Side,
};
pub use enumerate::{enumerate_isomorphisms, find_isomorphism, ENUMERATION_GUARD};
pub use fixture::{compatible_extensions, example1_isomorphisms, find_example1_fixture, EXAMPLE1_FIRST_PAIR};
pub use gadget::{AnchorSignature, CliqueRecord, GadgetGraph, Removal, VertexKind};
pub use oracle::{
    planted_image, IsoOracle, IsoOraclePolicy, IsoPolicyKind, PolicyOracle, ISO_ORACLE_GUARD,
};
pub use refine::Matcher;
