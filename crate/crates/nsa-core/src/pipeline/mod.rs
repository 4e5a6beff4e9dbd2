pub fn run(_argv: Vec<String>) -> u8 {
    0
}
