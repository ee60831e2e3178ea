#include "router/cli.hpp"
#include "router/solver.hpp"

#include <iostream>

int main(int argc, char** argv) {
  try {
    router::run_scenario(router::parse_cli(argc, argv));
    return 0;
  } catch (const router::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  }
}
