fn main() {
    println!("{}", idphase_core::probe(1.0));
}
