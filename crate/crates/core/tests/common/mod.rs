#![allow(dead_code)]

pub mod brute;
pub mod gradcheck;
pub mod oracle;
pub mod streams;
