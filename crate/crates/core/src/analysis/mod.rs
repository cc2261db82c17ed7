//! Classical reference eigensolver, seeded test-matrix generators and the
//! scaling scans (sparsity, commutator norm, Trotter error).

pub mod oracle;
pub mod random;
pub mod scans;

pub use oracle::{
    inverse_sqrt, oracle_eigensolve, oracle_eigensolve_via, Eigenpair, MAX_ORACLE_SIZE,
};
pub use random::{random_banded, random_block_pd, random_pencil, RandomPencil};
pub use scans::{
    scan_commutator_norm, scan_sparsity, scan_trotter_error, spectral_norm, ScanRecord,
    SparsityRow, MAX_SCAN_SIZE,
};
