//! Enumeration and verification of sum-free sets in small finite groups.
//!
//! Groups are index-based Cayley tables ([`group::GroupTable`]), subsets are
//! fixed-width bitsets ([`set::ElementSet`]). On top of those sit subgroup
//! computations, a branch-and-bound search for maximum and locally maximal
//! sum-free sets, witness-producing checks of the characterisations of
//! elementary abelian 2- and 3-groups, and the reporting layer behind the
//! `sumfree` binary.

pub mod group;
pub mod report;
pub mod search;
pub mod set;
pub mod subgroup;
pub mod verify;
