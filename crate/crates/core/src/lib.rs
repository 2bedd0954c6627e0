// SPDX-License-Identifier: Apache-2.0

//! Boolean function analysis and synthesis of certified exact quantum query
//! algorithms.

pub mod boolfun;
pub mod formula;
pub mod qprogram;
pub mod synth;
pub mod verify;
