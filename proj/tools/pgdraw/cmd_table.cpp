#include "commands.hpp"

namespace pgdraw {

int run_table(const Common&, const TableArgs& args, std::ostream& out) {
  polyagamma::build_trunc_table(args.h_min, args.h_max, args.step).write_csv(out);
  return ok;
}

}  // namespace pgdraw
