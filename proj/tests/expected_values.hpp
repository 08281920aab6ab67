#pragma once

#include <string>
#include <vector>

// Exact payload values expected from the certificates of a seed-1 run at p = 10007.
struct ExpectedValue {
  std::string family;
  std::string centre;
  std::string variant;
  std::string key;
  std::string value;
};

inline const std::vector<ExpectedValue>& expected_values() {
  static const std::vector<ExpectedValue> v = {
      {"deg42", "2/(1,1,1)#1", "", "A_term", "9/42"},       {"deg42", "2/(1,1,1)#1", "", "E_term", "1/2"},
      {"deg42", "3/(1,1,2)#1", "", "A_term", "7/42"},       {"deg42", "3/(1,1,2)#1", "", "E_term", "1/6"},
      {"deg42", "7/(1,1,6)#1", "", "A_term", "1/42"},       {"deg42", "7/(1,1,6)#1", "", "E_term", "1/42"},
      {"deg42", "5/(1,1,4)#1", "", "A_term", "10/42"},      {"deg42", "5/(1,1,4)#1", "", "E_term", "1/4"},
      {"deg42", "5/(1,2,3)#1", "", "A_term", "6/7"},        {"deg42", "5/(1,2,3)#1", "", "E_term", "6/5"},

      {"deg30", "5/(1,2,3)#1", "", "A_term", "1/30"},       {"deg30", "5/(1,2,3)#1", "", "E_term", "1/30"},
      {"deg30", "5/(1,2,3)#2", "", "A_term", "1/30"},       {"deg30", "5/(1,2,3)#2", "", "E_term", "1/30"},
      {"deg30", "5/(1,2,3)#1", "forced-case-B", "A_term", "5/6"},
      {"deg30", "5/(1,2,3)#1", "forced-case-B", "E_term", "5"},
      {"deg30", "6/(1,1,5)#1", "", "A_term", "1/30"},       {"deg30", "6/(1,1,5)#1", "", "E_term", "1/30"},
      {"deg30", "5/(1,1,4)#1", "", "A_term", "5/6"},        {"deg30", "5/(1,1,4)#1", "", "E_term", "5/4"},

      {"deg20", "2/(1,1,1)#1", "", "A_term", "7/20"},       {"deg20", "2/(1,1,1)#1", "", "E_term", "1/2"},
      {"deg20", "5/(1,1,4)#1", "", "A_term", "1/20"},       {"deg20", "5/(1,1,4)#1", "", "E_term", "1/20"},
      {"deg20", "5/(1,1,4)#2", "", "A_term", "1/20"},       {"deg20", "5/(1,1,4)#2", "", "E_term", "1/20"},
      {"deg20", "4/(1,1,3)#1", "", "A_term", "5/4"},        {"deg20", "4/(1,1,3)#1", "", "E_term", "25/12"},
      {"deg20", "4/(1,1,3)#1", "forced-alpha-zero", "A_term", "1/2"},
      {"deg20", "4/(1,1,3)#1", "forced-alpha-zero", "E_term", "1/2"},
      {"deg20", "5/(1,2,3)#1", "", "B3", "1/60"},           {"deg20", "5/(1,2,3)#1", "", "H3", "1/120"},
      {"deg20", "5/(1,2,3)#1", "", "ratio", "2"},

      {"deg12", "4/(1,1,3)#1", "", "A_term", "1/12"},       {"deg12", "4/(1,1,3)#1", "", "E_term", "1/12"},
      {"deg12", "3/(1,1,2)#1", "", "A_term", "1/2"},        {"deg12", "3/(1,1,2)#1", "", "E_term", "1/2"},
      {"deg12", "3/(1,1,2)#2", "", "A_term", "1/2"},        {"deg12", "3/(1,1,2)#2", "", "E_term", "1/2"},
      {"deg12", "5/(1,1,4)#1", "", "B3", "1/30"},           {"deg12", "5/(1,1,4)#1", "", "H3", "1/60"},
      {"deg12", "5/(1,1,4)#1", "", "ratio", "2"},
      {"deg12", "5/(1,2,3)#1", "", "m_E", "2"},             {"deg12", "5/(1,2,3)#1", "", "m_Ep", "3"},
      {"deg12", "5/(1,2,3)#1", "", "gamma", "4/3"},         {"deg12", "5/(1,2,3)#1", "", "B3", "1/20"},

      {"deg4", "2/(1,1,1)#1", "", "A_term", "4/4"},         {"deg4", "2/(1,1,1)#1", "", "E_term", "2/2"},
      {"deg4", "2/(1,1,1)#2", "", "A_term", "4/4"},         {"deg4", "2/(1,1,1)#2", "", "E_term", "2/2"},
      {"deg4", "2/(1,1,1)#3", "", "A_term", "4/4"},         {"deg4", "2/(1,1,1)#3", "", "E_term", "2/2"},
      {"deg4", "3/(1,1,2)#1", "", "B3", "1/12"},            {"deg4", "3/(1,1,2)#1", "", "H3", "1/24"},
      {"deg4", "3/(1,1,2)#1", "", "ratio", "2"},
      {"deg4", "4/(1,1,3)#1", "", "m_E", "2"},              {"deg4", "4/(1,1,3)#1", "", "m_Ep", "3"},
      {"deg4", "4/(1,1,3)#1", "", "gamma", "4/3"},
  };
  return v;
}
