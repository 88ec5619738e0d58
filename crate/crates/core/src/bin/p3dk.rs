fn main() {
    std::process::exit(p3dk::cli::run(std::env::args_os()));
}
