//! Library surface of the command-line tool; holds the alist format
//! support so integration tests can parse what the binary writes.

pub mod alist;
