// Placeholder until the harness lands; see below for the real benchmark.
fn main() {}
