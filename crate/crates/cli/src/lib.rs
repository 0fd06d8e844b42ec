//! IO companion for the cubic surface pipeline: exact points files,
//! STL/OBJ mesh output, JSON documents and the command implementations.

pub mod json;
pub mod mesh_io;
pub mod points_file;
pub mod run;
pub mod text;
