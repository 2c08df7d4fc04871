fn main() {
    std::process::exit(sunflower_vc::cli::run(std::env::args_os()));
}
