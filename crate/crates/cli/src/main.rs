fn main() {
    reaper_cli::main()
}
