fn main() {
    std::process::exit(almost_beatty::run());
}
