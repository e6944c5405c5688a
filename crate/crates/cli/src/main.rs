//! `qbk`: compute q-Bernoulli values and q-power sums, and verify identities.
//!
//! Exit codes: 0 on success, 1 when a verification reports a mismatch or
//! error, 2 on usage errors (bad flags, odd orders, unwritable output).

mod app;
mod numparse;

fn main() {
    let code = app::run(std::env::args_os());
    std::process::exit(code);
}
