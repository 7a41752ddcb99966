//! Scene files, measurement CSV, coverage grids and the `o2i` command-line
//! front end over [`o2i_core`].

#![forbid(unsafe_code)]

pub mod cli;
pub mod grid;
pub mod measurements;
pub mod report;
pub mod scene_file;
