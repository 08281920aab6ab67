#include <numeric>
#include <stdexcept>

#include "pfano/pfaffian.hpp"

namespace pfano {

std::string entry_name(int k) {
  static const char* names[kEntries] = {"m12", "m13", "m14", "m15", "m23", "m24", "m25", "m34", "m35", "m45"};
  if (k < 0 || k >= kEntries) throw std::out_of_range("entry index");
  return names[k];
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Excluded:
      return "excluded";
    case Verdict::QuadraticInvolution:
      return "Q.I.";
    case Verdict::LinkExists:
      return "exists-link";
  }
  return "?";
}

std::string type_str(int r, int a) {
  return "1/" + std::to_string(r) + "(1," + std::to_string(a) + "," + std::to_string(r - a) + ")";
}

namespace {

FamilySpec make(std::string id, std::array<int, kVars> w, std::array<std::string, kVars> names,
                std::array<int, kEntries> entries, Rational A3, std::vector<BasketEntry> basket,
                std::vector<TableRow> table, bool type_II1) {
  FamilySpec s;
  s.id = std::move(id);
  s.space = WeightSystem{w, names};
  s.entry_degrees = entries;
  s.pfaffian_degrees = pfaffian_degrees_from_entries(entries);
  s.A3 = A3;
  s.basket = std::move(basket);
  s.sigma = std::accumulate(w.begin(), w.end(), 0) - 1;
  s.table = std::move(table);
  s.has_type_II1 = type_II1;
  return s;
}

constexpr auto E = Verdict::Excluded;
constexpr auto QI = Verdict::QuadraticInvolution;
constexpr auto LK = Verdict::LinkExists;

std::vector<FamilySpec> build() {
  std::vector<FamilySpec> c;
  c.push_back(make("deg42", {1, 5, 6, 7, 8, 9, 10}, {"x", "y", "z", "t", "u", "v", "w"},
                   {6, 7, 8, 9, 8, 9, 10, 10, 11, 12}, Rational(1, 42),
                   {{2, 1, 1}, {3, 1, 1}, {5, 1, 1}, {5, 2, 1}, {7, 1, 1}},
                   {{2, 1, 1, E, {}},
                    {3, 1, 1, E, {}},
                    {5, 1, 1, E, {"cd:deg42-5"}},
                    {5, 2, 1, E, {}},
                    {7, 1, 1, E, {}}},
                   false));
  c.push_back(make("deg30", {1, 5, 5, 6, 7, 8, 9}, {"x", "y0", "y1", "z", "t", "u", "v"},
                   {5, 6, 7, 8, 7, 8, 9, 9, 10, 11}, Rational(1, 30), {{5, 1, 1}, {5, 2, 2}, {6, 1, 1}},
                   {{5, 1, 1, E, {"cd:deg30-5"}}, {5, 2, 2, E, {}}, {6, 1, 1, E, {}}}, false));
  c.push_back(make("deg20", {1, 4, 5, 5, 6, 7, 8}, {"x", "y", "z0", "z1", "t", "u", "v"},
                   {4, 5, 6, 7, 6, 7, 8, 8, 9, 10}, Rational(1, 20),
                   {{2, 1, 1}, {4, 1, 1}, {5, 1, 2}, {5, 2, 1}},
                   {{2, 1, 1, E, {}}, {4, 1, 1, E, {"cd:deg20-4"}}, {5, 1, 2, E, {}}, {5, 2, 1, QI, {}}}, false));
  c.push_back(make("deg12", {1, 3, 4, 5, 5, 6, 7}, {"x", "y", "z", "t0", "t1", "u", "v"},
                   {3, 4, 5, 6, 5, 6, 7, 7, 8, 9}, Rational(1, 12),
                   {{3, 1, 2}, {4, 1, 1}, {5, 1, 1}, {5, 2, 1}},
                   {{3, 1, 2, E, {"cd:deg12-3"}},
                    {4, 1, 1, E, {"cd:deg12-4"}},
                    {5, 1, 1, QI, {}},
                    {5, 2, 1, LK, {"cd:deg12-5link"}}},
                   true));
  c.push_back(make("deg4", {1, 2, 3, 3, 4, 4, 5}, {"x", "y", "z0", "z1", "t0", "t1", "u"},
                   {2, 3, 3, 4, 4, 4, 5, 5, 6, 6}, Rational(1, 4), {{2, 1, 3}, {3, 1, 3}, {4, 1, 1}},
                   {{2, 1, 3, E, {"cd:deg4-2"}},
                    {3, 1, 3, QI, {"cd:deg4-3"}},
                    {4, 1, 1, LK, {"cd:deg4-3", "cd:deg4-4"}}},
                   true));
  return c;
}

}  // namespace

const std::vector<FamilySpec>& family_catalog() {
  static const std::vector<FamilySpec> catalog = build();
  return catalog;
}

const FamilySpec& family(const std::string& id) {
  for (const auto& s : family_catalog())
    if (s.id == id) return s;
  throw std::out_of_range("unknown family id: " + id);
}

std::optional<std::array<int, 5>> half_degrees(const std::array<int, kEntries>& e) {
  auto E = [&](int i, int j) { return e[entry_index(i, j)]; };
  // 2 q_1 = e12 + e13 - e23, and 2 q_j = 2 e1j - 2 q_1.
  std::array<int, 5> q2{};
  q2[0] = E(1, 2) + E(1, 3) - E(2, 3);
  for (int j = 2; j <= 5; ++j) q2[j - 1] = 2 * E(1, j) - q2[0];
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      if (q2[i - 1] + q2[j - 1] != 2 * E(i, j)) return std::nullopt;
  return q2;
}

std::array<int, 5> pfaffian_degrees_from_entries(const std::array<int, kEntries>& e) {
  auto q2 = half_degrees(e);
  if (!q2) throw std::invalid_argument("entry degrees admit no half-degree solution");
  int total = 0;
  for (int v : *q2) total += v;
  std::array<int, 5> d{};
  for (int i = 1; i <= 5; ++i) d[i - 1] = (total - (*q2)[6 - i - 1]) / 2;
  return d;
}

}  // namespace pfano
