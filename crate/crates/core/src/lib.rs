//! Turán numbers of the spiders `T3`, `T''`, `T'''` (trees on `n` vertices
//! with maximum degree `n - 4`): closed forms, extremal constructions, an
//! exact tree-containment checker, and a brute-force oracle for small hosts.

pub mod constructions;
pub mod containment;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod suite;
pub mod trees;

pub use constructions::{extremal_graph, BaseKind, ConstructionOptions, ConstructionRecipe};
pub use containment::{contains_tree, generic_backtrack, verify_witness, EmbeddingWitness};
pub use error::{ConstructionError, DomainError, EdgeListError, Graph6Error, GraphError, OracleError, TreeError};
pub use formulas::{ExtremalValue, ResidueDecomposition, Spider};
pub use graph::SimpleGraph;
pub use oracle::{ex_bruteforce, ex_bruteforce_parallel, Budget, OracleResult};
pub use trees::{SkeletonDecomposition, TreeFamily};
