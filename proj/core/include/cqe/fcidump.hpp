// Copyright 2026 The CQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "cqe/integrals.hpp"

namespace cqe {

// FCIDUMP text: a namelist header (&FCI NORB=, NELEC=, MS2= ... &END) then
// "value i j k l" records with 1-based indices; (i j 0 0) is one-electron,
// (0 0 0 0) the nuclear repulsion.
IntegralSet parse_fcidump(std::string_view text);
std::string write_fcidump(const IntegralSet& ints);

IntegralSet read_fcidump_file(const std::string& path);

}  // namespace cqe
