fn main() {
    println!("quartics CLI placeholder");
}
