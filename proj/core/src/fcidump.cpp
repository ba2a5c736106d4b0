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

#include "cqe/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "cqe/errors.hpp"

namespace cqe {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Reads KEY=value from the flattened header; value runs to the next comma.
std::optional<int> header_int(const std::string& header, const std::string& key, std::size_t line) {
  std::size_t pos = 0;
  while ((pos = header.find(key, pos)) != std::string::npos) {
    const bool boundary = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
    std::size_t eq = pos + key.size();
    while (eq < header.size() && header[eq] == ' ') ++eq;
    if (boundary && eq < header.size() && header[eq] == '=') {
      std::size_t start = eq + 1;
      while (start < header.size() && header[start] == ' ') ++start;
      int value = 0;
      const auto res = std::from_chars(header.data() + start, header.data() + header.size(), value);
      if (res.ec != std::errc()) throw ParseError("invalid integer for " + key, line);
      return value;
    }
    pos += key.size();
  }
  return std::nullopt;
}

double parse_value(std::string token, std::size_t line) {
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("invalid numeric value '" + token + "'", line);
  return v;
}

int parse_index(const std::string& token, int norb, std::size_t line) {
  int v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw ParseError("invalid orbital index '" + token + "'", line);
  if (v < 0 || v > norb) throw ParseError("orbital index " + token + " outside 0.." + std::to_string(norb), line);
  return v;
}

}  // namespace

IntegralSet parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::string header;
  std::size_t header_line = 0;
  bool in_header = false, header_done = false;

  // Header may span several lines and may end with "&END" or "/".
  while (!header_done && std::getline(in, line)) {
    ++line_no;
    std::string u = upper(line);
    if (!in_header) {
      const auto start = u.find("&FCI");
      if (start == std::string::npos) {
        if (u.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected '&FCI' header", line_no);
      }
      in_header = true;
      header_line = line_no;
      u = u.substr(start + 4);
    }
    std::size_t end = u.find("&END");
    if (end == std::string::npos) {
      const auto slash = u.find('/');
      if (slash != std::string::npos) end = slash;
    }
    if (end != std::string::npos) {
      header += u.substr(0, end);
      header_done = true;
    } else {
      header += u + ",";
    }
  }
  if (!header_done) throw ParseError("unterminated or missing &FCI header", in_header ? header_line : line_no);

  const auto norb = header_int(header, "NORB", header_line);
  if (!norb || *norb < 1) throw ParseError("header lacks a positive NORB", header_line);
  IntegralSet ints(*norb, "FCIDUMP");
  ints.n_electrons = header_int(header, "NELEC", header_line).value_or(0);
  ints.ms2 = header_int(header, "MS2", header_line).value_or(0);

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream rec(line);
    std::vector<std::string> tok;
    for (std::string t; rec >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5)
      throw ParseError("expected 'value i j k l' (5 fields), found " + std::to_string(tok.size()), line_no);
    const double v = parse_value(tok[0], line_no);
    const int i = parse_index(tok[1], *norb, line_no), j = parse_index(tok[2], *norb, line_no);
    const int k = parse_index(tok[3], *norb, line_no), l = parse_index(tok[4], *norb, line_no);
    if (i && j && k && l) {
      ints.set_eri_symmetric(i - 1, j - 1, k - 1, l - 1, v);
    } else if (i && j && !k && !l) {
      ints.h_core(i - 1, j - 1) = v;
      ints.h_core(j - 1, i - 1) = v;
    } else if (!i && !j && !k && !l) {
      ints.e_nuc = v;
    } else if (i && !j && !k && !l) {
      // Orbital energy records carry no Hamiltonian information.
    } else {
      throw ParseError("unsupported index pattern", line_no);
    }
  }
  return ints;
}

std::string write_fcidump(const IntegralSet& ints) {
  const int n = ints.n_spatial;
  std::string out = "&FCI NORB=" + std::to_string(n) + ",NELEC=" + std::to_string(ints.n_electrons) +
                    ",MS2=" + std::to_string(ints.ms2) + ",\n ORBSYM=";
  for (int i = 0; i < n; ++i) out += "1,";
  out += "\n ISYM=1,\n&END\n";
  char buf[96];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.17E %4d %4d %4d %4d\n", v, i, j, k, l);
    out += buf;
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = ints.eri_at(p, q, r, s);
          if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (ints.h_core(p, q) != 0.0) emit(ints.h_core(p, q), p + 1, q + 1, 0, 0);
  emit(ints.e_nuc, 0, 0, 0, 0);
  return out;
}

IntegralSet read_fcidump_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open FCIDUMP file '" + path + "'", 0);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_fcidump(ss.str());
}

}  // namespace cqe
