#include "shadowlab/cli.hpp"
#include "shadowlab/parallel.hpp"

int main(int argc, char** argv) {
  shadowlab::configure_threads_from_env();
  return shadowlab::cli::main(argc, argv);
}
