//! Certified `d`-coloring of graphs with maximum degree at most `d` and no
//! `K_{d+1}`, where one color class is a maximum independent set.
//!
//! ```
//! use catlin::{catlin_color, generators::named, verify::verify_catlin, Limits};
//!
//! let g = named("petersen").unwrap();
//! let result = catlin_color(&g, 3).unwrap();
//! assert_eq!(result.big_class_size, 4);
//! let report = verify_catlin(&g, &result, 3, &Limits::default()).unwrap();
//! assert_eq!(report.catlin_ok, Some(true));
//! ```

pub mod engine;
pub mod generators;
pub mod graph;
pub mod io;
pub mod solvers;
pub mod verify;

pub use engine::{catlin_color, validate_instance, CatlinError, CatlinResult, Engine};
pub use graph::{Coloring, Graph, GraphError, VertexSet};
pub use solvers::Limits;
