#pragma once

namespace CLI {
class App;
}

namespace crsim::cli {

void register_tomo(CLI::App& app);
void register_expr(CLI::App& app);
void register_entropy(CLI::App& app);
void register_variance(CLI::App& app);
void register_vqe(CLI::App& app);

}  // namespace crsim::cli
