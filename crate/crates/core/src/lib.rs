//! Grid Ramsey numbers.
//!
//! Edge colourings of the grid graph `Γ_{m,n} = K_m × K_n`, alternating
//! rectangles, the vertical-colouring reduction (agreement graphs and their
//! `r`-colourability), colour switching and stabilisation, exact bound
//! formulas, and exhaustive search for small `g(m, n)` and `G(r)`.

pub mod bits;
pub mod bounds;
pub mod cert;
pub mod cli;
pub mod colorability;
pub mod constructions;
pub mod error;
pub mod families;
pub mod grid;
pub mod search;
pub mod transforms;

pub use error::{Error, Result};
pub use grid::{
    agreement_graph, enumerate_alternating_rectangles, is_alternating, pair_rank, AgreementGraph, CliqueColoring,
    Color, ColumnColoring, FullGridColoring, GridDims, Rectangle, VerticalColoring,
};
