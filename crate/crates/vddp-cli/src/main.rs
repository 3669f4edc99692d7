fn main() { println!("{}", vddp_core::probe()); }
