#include "liefact/cli_app.hpp"

int main(int argc, char** argv) { return liefact::cli::run(argc, argv); }
