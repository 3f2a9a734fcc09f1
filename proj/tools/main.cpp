#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "common.hpp"
#include "crsim/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cross-resonance entangler synthesis, circuit characterization and VQE "
               "toolkit (statevector simulation)",
               "crsim"};
  app.set_version_flag("--version", std::string(crsim::kVersion));
  app.require_subcommand(1);

  crsim::cli::register_tomo(app);
  crsim::cli::register_expr(app);
  crsim::cli::register_entropy(app);
  crsim::cli::register_variance(app);
  crsim::cli::register_vqe(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, bad flags do not
  } catch (const crsim::cli::FitFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
