fn main() {
    std::process::exit(dihedral_cm::cli::main_with_args(std::env::args_os()));
}
