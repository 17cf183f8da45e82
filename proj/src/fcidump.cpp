#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symq/fermion.hpp"

namespace symq {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

double parse_real(const std::string& token, std::size_t line) {
  std::string t = token;
  for (char& c : t) {
    if (c == 'D' || c == 'd') {
      c = 'E';
    }
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) {
      throw ParseError("trailing characters in number '" + token + "'", line);
    }
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + token + "'", line);
  }
}

long parse_int(const std::string& token, std::size_t line) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(token, &pos);
    if (pos != token.size()) {
      throw ParseError("trailing characters in integer '" + token + "'", line);
    }
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse integer '" + token + "'", line);
  }
}

// Splits a namelist value list on commas, expanding Fortran "k*v" repeats.
std::vector<std::string> split_namelist_values(const std::string& body,
                                               std::size_t line) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(body);
  while (std::getline(ss, item, ',')) {
    std::string trimmed;
    for (char c : item) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        trimmed += c;
      }
    }
    if (trimmed.empty()) {
      continue;
    }
    const auto star = trimmed.find('*');
    if (star != std::string::npos) {
      const long repeat = parse_int(trimmed.substr(0, star), line);
      if (repeat < 0) {
        throw ParseError("negative repeat count in '" + trimmed + "'", line);
      }
      for (long k = 0; k < repeat; ++k) {
        out.push_back(trimmed.substr(star + 1));
      }
    } else {
      out.push_back(trimmed);
    }
  }
  return out;
}

struct Header {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  std::vector<int> orbsym;
  std::optional<double> vnn;
};

Header parse_header(const std::string& text) {
  // Normalize the namelist body: strip "&FCI", replace newlines by commas so
  // KEY=V1,V2,... groups can be scanned left to right.
  std::string body = upper(text);
  const auto start = body.find("&FCI");
  if (start == std::string::npos) {
    throw ParseError("missing &FCI namelist header", 1);
  }
  body = body.substr(start + 4);
  const auto end_tag = body.find("&END");
  if (end_tag != std::string::npos) {
    body.resize(end_tag);
  }
  for (char& c : body) {
    if (c == '\n' || c == '\r' || c == '\t' || c == '/') {
      c = ' ';
    }
  }

  // Tokenize into KEY = values runs.
  std::map<std::string, std::string> fields;
  std::size_t pos = 0;
  std::string current_key;
  std::string current_val;
  auto flush = [&] {
    if (!current_key.empty()) {
      fields[current_key] = current_val;
    }
    current_key.clear();
    current_val.clear();
  };
  while (pos < body.size()) {
    const auto eq = body.find('=', pos);
    if (eq == std::string::npos) {
      current_val += body.substr(pos);
      break;
    }
    // The token immediately before '=' is the next key.
    std::size_t key_end = eq;
    while (key_end > pos &&
           std::isspace(static_cast<unsigned char>(body[key_end - 1]))) {
      --key_end;
    }
    std::size_t key_begin = key_end;
    while (key_begin > pos &&
           (std::isalnum(static_cast<unsigned char>(body[key_begin - 1])) ||
            body[key_begin - 1] == '_')) {
      --key_begin;
    }
    if (key_begin == key_end) {
      throw ParseError("malformed namelist near '='", 1);
    }
    current_val += body.substr(pos, key_begin - pos);
    flush();
    current_key = body.substr(key_begin, key_end - key_begin);
    pos = eq + 1;
  }
  flush();

  Header h;
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = fields.find(key);
    if (it == fields.end()) {
      return std::nullopt;
    }
    return it->second;
  };

  const auto norb = get("NORB");
  if (!norb) {
    throw ParseError("header is missing NORB", 1);
  }
  auto single_int = [&](const std::string& body_str, const char* key) {
    const auto values = split_namelist_values(body_str, 1);
    if (values.size() != 1) {
      throw ParseError(std::string("expected a single value for ") + key, 1);
    }
    return static_cast<int>(parse_int(values[0], 1));
  };
  h.norb = single_int(*norb, "NORB");
  if (h.norb <= 0) {
    throw ParseError("NORB must be positive", 1);
  }
  if (const auto v = get("NELEC")) {
    h.nelec = single_int(*v, "NELEC");
  }
  if (const auto v = get("MS2")) {
    h.ms2 = single_int(*v, "MS2");
  }
  if (const auto v = get("ORBSYM")) {
    for (const auto& tok : split_namelist_values(*v, 1)) {
      h.orbsym.push_back(static_cast<int>(parse_int(tok, 1)));
    }
    if (!h.orbsym.empty() && h.orbsym.size() != std::size_t(h.norb)) {
      throw ParseError("ORBSYM count does not match NORB", 1);
    }
  }
  if (const auto v = get("VNN")) {
    const auto values = split_namelist_values(*v, 1);
    if (values.size() != 1) {
      throw ParseError("expected a single value for VNN", 1);
    }
    h.vnn = parse_real(values[0], 1);
  }
  return h;
}

}  // namespace

IntegralSet load_fcidump(const std::string& text) {
  // Locate the end of the namelist: a line whose content is "/" or that
  // contains "&END".
  std::istringstream in(text);
  std::string line;
  std::string header_text;
  std::size_t line_no = 0;
  bool header_done = false;
  std::ostringstream rest;
  while (std::getline(in, line)) {
    ++line_no;
    if (!header_done) {
      header_text += line + "\n";
      const std::string u = upper(line);
      const auto slash = u.find('/');
      if (u.find("&END") != std::string::npos || slash != std::string::npos) {
        header_done = true;
      }
      continue;
    }
    rest << line << "\n";
  }
  if (!header_done) {
    throw ParseError("unterminated namelist header (no &END or /)", line_no);
  }
  const Header header = parse_header(header_text);

  IntegralSet ints(header.norb);
  ints.n_electrons = header.nelec;
  ints.ms2 = header.ms2;
  ints.orbsym = header.orbsym;

  // Track explicitly provided slots so duplicates that disagree by more
  // than 1e-10 are rejected with their line number.
  std::map<std::array<int, 4>, std::pair<double, std::size_t>> seen;
  auto canonical4 = [](int i, int j, int k, int l) {
    std::array<int, 2> a{i, j}, b{k, l};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (b < a) {
      std::swap(a, b);
    }
    return std::array<int, 4>{a[0], a[1], b[0], b[1]};
  };

  std::istringstream data(rest.str());
  std::size_t data_line = 0;
  const std::size_t header_line_count =
      std::count(header_text.begin(), header_text.end(), '\n');
  double constant = 0.0;
  bool constant_seen = false;
  while (std::getline(data, line)) {
    ++data_line;
    const std::size_t here = header_line_count + data_line;
    std::istringstream fields(line);
    std::string value_tok;
    if (!(fields >> value_tok)) {
      continue;  // blank line
    }
    std::string i_tok, j_tok, k_tok, l_tok;
    if (!(fields >> i_tok >> j_tok >> k_tok >> l_tok)) {
      throw ParseError("expected 'value i j k l'", here);
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError("unexpected trailing field '" + extra + "'", here);
    }
    const double value = parse_real(value_tok, here);
    const int i = static_cast<int>(parse_int(i_tok, here));
    const int j = static_cast<int>(parse_int(j_tok, here));
    const int k = static_cast<int>(parse_int(k_tok, here));
    const int l = static_cast<int>(parse_int(l_tok, here));
    for (int idx : {i, j, k, l}) {
      if (idx < 0 || idx > header.norb) {
        throw ParseError("orbital index " + std::to_string(idx) +
                             " out of range 0.." + std::to_string(header.norb),
                         here);
      }
    }

    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (constant_seen && std::abs(constant - value) > 1e-10) {
        throw ParseError("conflicting duplicate scalar entry", here);
      }
      constant = value;
      constant_seen = true;
      continue;
    }
    if (k == 0 && l == 0) {
      if (i == 0 || j == 0) {
        throw ParseError("one-electron entry needs two nonzero indices", here);
      }
      const auto key = canonical4(-i, -j, 0, 0);
      auto it = seen.find(key);
      if (it != seen.end() && std::abs(it->second.first - value) > 1e-10) {
        throw ParseError("conflicting duplicate for h(" + std::to_string(i) +
                             "," + std::to_string(j) + "), first on line " +
                             std::to_string(it->second.second),
                         here);
      }
      seen[key] = {value, here};
      ints.set_one_body(i - 1, j - 1, value);
      continue;
    }
    if (i == 0 || j == 0 || k == 0 || l == 0) {
      throw ParseError("two-electron entry needs four nonzero indices", here);
    }
    const auto key = canonical4(i, j, k, l);
    auto it = seen.find(key);
    if (it != seen.end() && std::abs(it->second.first - value) > 1e-10) {
      throw ParseError("conflicting duplicate for g(" + std::to_string(i) +
                           "," + std::to_string(j) + "," + std::to_string(k) +
                           "," + std::to_string(l) + "), first on line " +
                           std::to_string(it->second.second),
                       here);
    }
    seen[key] = {value, here};
    ints.set_two_body(i - 1, j - 1, k - 1, l - 1, value);
  }

  if (header.vnn) {
    ints.v_nn = *header.vnn;
    ints.core_energy = constant - *header.vnn;
  } else {
    ints.v_nn = constant;
    ints.core_energy = 0.0;
  }
  return ints;
}

IntegralSet load_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open FCIDUMP file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_fcidump(ss.str());
}

}  // namespace symq
