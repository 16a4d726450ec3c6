#include <stdexcept>
#include <vector>

#include "commands.hpp"
#include "polyagamma/polya_gamma.hpp"

namespace pgdraw {

int run_sample(const Common& common, const SampleArgs& args, std::ostream& out) {
  using namespace polyagamma;
  const auto method = parse_method(args.method);
  if (!method) throw std::invalid_argument("unknown method `" + args.method + "`");
  const auto table = load_table(common);
  AlternateOptions options;
  if (table) options.table = &*table;

  const PgSampler sampler(PgParams(args.b, args.z), *method, Thresholds{}, options);
  RngStream rng(common.seed);
  if (args.format == "csv") out << "draw\n";
  for (std::int64_t i = 0; i < args.n; ++i) out << fmt(sampler(rng)) << '\n';
  return ok;
}

}  // namespace pgdraw
