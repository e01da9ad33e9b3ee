// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gmm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. args[0] is the program name. Exit codes: 0 on
/// success, 1 when a suite fails or a file cannot be written, 2 on a usage
/// error (flags are validated before any computation).
///
///   render-param --slice fixed-crit|a-slice|b-slice|linear --n N [--a C|--b C|--t C]
///                --center X,Y --width W --px P [--max-iter M] --out FILE [--overlay LIST]
///   render-julia --n N --a C [--b C] --center X,Y --width W --px P [--max-iter M] --out FILE
///   centers --n N [--verify]
///   spine --n N|inf --samples S
///   verify --suite ID[,ID...] [--n-range LO:HI] [--seed S] [--timing]
///   serve --port P [--host H]
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmm
