// Prints the measurements behind include/infodist/calibration.hpp.
//
//   infodist-calibrate <fixture-dir>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "infodist/audit.hpp"
#include "infodist/compressors.hpp"
#include "infodist/random.hpp"

using namespace infodist;

namespace {

std::vector<DataItem> generated_items() {
  std::vector<DataItem> out;
  for (std::size_t size : {1u, 7u, 64u, 1000u, 10000u, 100000u}) {
    Rng rng(size);
    Bytes random(size), text(size), runs(size, 'a');
    for (auto& b : random) b = static_cast<std::uint8_t>(rng.index(256));
    for (std::size_t i = 0; i < size; ++i) text[i] = static_cast<std::uint8_t>("ACGT"[rng.index(4)]);
    out.push_back({"random-" + std::to_string(size), random, "gen"});
    out.push_back({"dna-" + std::to_string(size), text, "gen"});
    out.push_back({"runs-" + std::to_string(size), runs, "gen"});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: infodist-calibrate <fixture-dir>\n");
    return 2;
  }
  auto fixtures = read_data_items(argv[1]);
  auto items = fixtures;
  for (auto& g : generated_items()) items.push_back(std::move(g));

  for (const auto& name : available_compressors()) {
    const auto z = make_compressor(name);
    std::printf("== %s  Z(empty) = %llu bits\n", name.c_str(),
                static_cast<unsigned long long>(z->compressed_bits({})));
    double worst_residual = -1e300, worst_excess = -1e300;
    for (const auto& x : items) {
      const double n_bits = std::max(2.0, 8.0 * static_cast<double>(x.bytes.size()));
      if (z->window() && 2 * x.bytes.size() > *z->window()) continue;
      const double zx = static_cast<double>(compressed_length(*z, x));
      const double excess = static_cast<double>(concat_length(*z, x, x)) - zx;
      const double residual = excess - 4.0 * std::log2(n_bits);
      worst_excess = std::max(worst_excess, excess);
      worst_residual = std::max(worst_residual, residual);
      std::printf("  %-36s n=%8zu Z=%9.0f  Z(xx)-Z(x)=%7.0f  -4log2(8n)=%8.2f\n", x.label.c_str(),
                  x.bytes.size(), zx, excess, residual);
    }
    std::printf("  worst excess %.0f, worst residual over 4·log2(8n) %.2f\n", worst_excess,
                worst_residual);
    const auto report = normality_audit(*z, fixtures);
    for (const auto& row : report.rows) {
      std::printf("  audit %-15s worst %10.1f bits  per log2 n %8.3f\n", row.axiom.c_str(),
                  row.worst_bits, row.worst_per_logn);
    }
    const auto exp = expansion_audit(*z, items);
    std::printf("  expansion worst constant %.1f bits (%s)\n", exp.worst_constant_bits,
                exp.worst_label.c_str());
  }
  return 0;
}
