#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kplan::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kBudgetExhausted = 3,
  kInfeasibleStage = 4,
};

/// Runs one `kplan` invocation. `args` excludes the program name.
///
///   estimate   --est lz76|bdm [--table F] [--block-length L] [--alphabet N] [SEQ | --file F]
///   gen-room   --n N [--goal corner|middle|X,Y] [--horizon T] [--start X,Y] [--out F]
///   plan-dp    --config F [--out DIR] [--threads N]
///   plan-cops  --config F [--solutions M] [--budget B] [--out DIR] [--threads N]
///   plan-scap  --config F [--out DIR] [--threads N]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kplan::cli
