fn main() {
    std::process::exit(pertalg::io::run(std::env::args_os()));
}
