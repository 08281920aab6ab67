#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "pfano/cli.hpp"

namespace pfano {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<int> int_list(const std::string& value, int line) {
  std::istringstream in(value);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw MemberFileError("'" + tok + "' is not an integer", line);
    }
  }
  return out;
}

int entry_slot(const std::string& key) {
  for (int k = 0; k < kEntries; ++k)
    if (entry_name(k) == key) return k;
  return -1;
}

}  // namespace

MemberFile parse_member_file(const std::string& text, std::uint32_t default_prime) {
  MemberFile out;
  std::map<int, std::pair<std::string, int>> entries;  // slot -> (text, line)
  std::optional<std::vector<int>> weights, degrees;
  int weights_line = 0, degrees_line = 0;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    auto colon = s.find(':');
    if (colon == std::string::npos) throw MemberFileError("expected 'key: value'", line);
    std::string key = trim(s.substr(0, colon)), value = trim(s.substr(colon + 1));
    if (key == "id") {
      out.id = value;
    } else if (key == "coefficient_field") {
      if (value == "Q") continue;
      std::string digits = value.rfind("F_", 0) == 0 ? value.substr(2) : value.rfind("GF(", 0) == 0 && value.back() == ')'
                                                                             ? value.substr(3, value.size() - 4)
                                                                             : "";
      auto p = int_list(digits, line);
      if (p.size() != 1 || p[0] <= 7 || !is_prime(static_cast<std::uint64_t>(p[0])))
        throw MemberFileError("coefficient_field must be Q or F_p with p a prime above 7", line);
      out.prime = static_cast<std::uint32_t>(p[0]);
    } else if (key == "weights") {
      weights = int_list(value, line);
      weights_line = line;
    } else if (key == "entry_degrees") {
      degrees = int_list(value, line);
      degrees_line = line;
    } else if (int slot = entry_slot(key); slot >= 0) {
      if (entries.count(slot)) throw MemberFileError("entry " + key + " given twice", line);
      entries[slot] = {value, line};
    } else {
      throw MemberFileError("unknown field '" + key + "'", line);
    }
  }
  if (out.id.empty()) throw MemberFileError("missing id", 0);
  const FamilySpec* spec = nullptr;
  try {
    spec = &family(out.id);
  } catch (const std::out_of_range&) {
    throw MemberFileError("unknown family '" + out.id + "'", 0);
  }
  if (weights && !std::equal(weights->begin(), weights->end(), spec->space.weights.begin(), spec->space.weights.end()))
    throw MemberFileError("weights disagree with family " + out.id, weights_line);
  if (degrees && !std::equal(degrees->begin(), degrees->end(), spec->entry_degrees.begin(), spec->entry_degrees.end()))
    throw MemberFileError("entry_degrees disagree with family " + out.id, degrees_line);
  if (entries.empty()) return out;
  if (entries.size() != kEntries) throw MemberFileError("an explicit member needs all ten entries", 0);
  PrimeField F(out.prime.value_or(default_prime));
  FpMatrix M;
  M.space = spec->space;
  M.entry_degrees = spec->entry_degrees;
  for (const auto& [slot, item] : entries) {
    try {
      ParsedPoly p = parse_and_grade(item.first, spec->space);
      M.entries[slot] = reduce_mod_p(p.poly, F);
    } catch (const std::exception& e) {
      throw MemberFileError(entry_name(slot) + ": " + e.what(), item.second);
    }
    FpPoly& e = M.entries[slot];
    if (!e.is_zero()) {
      auto d = e.weighted_degree(spec->space);
      if (!d) throw MemberFileError(entry_name(slot) + " is not homogeneous", item.second);
      if (*d != spec->entry_degrees[slot])
        throw MemberFileError(entry_name(slot) + " has degree " + std::to_string(*d) + ", expected " +
                                  std::to_string(spec->entry_degrees[slot]),
                              item.second);
    }
  }
  if (auto why = M.validate(); !why.empty()) throw MemberFileError(why, 0);
  out.member = std::move(M);
  return out;
}

MemberFile load_member_file(const std::string& path, std::uint32_t default_prime) {
  std::ifstream in(path);
  if (!in) throw MemberFileError("cannot open " + path, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_member_file(buf.str(), default_prime);
}

std::string member_to_text(const std::string& id, const FpMatrix& M) {
  std::ostringstream out;
  out << "id: " << id << "\n";
  out << "coefficient_field: F_" << M.entries[0].field().p << "\n";
  out << "weights:";
  for (int w : M.space.weights) out << " " << w;
  out << "\nentry_degrees:";
  for (int d : M.entry_degrees) out << " " << d;
  out << "\n";
  for (int k = 0; k < kEntries; ++k) out << entry_name(k) << ": " << M.entries[k].to_string(M.space) << "\n";
  return out.str();
}

}  // namespace pfano
