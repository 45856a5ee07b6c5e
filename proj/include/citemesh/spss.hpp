#pragma once

#include <fstream>
#include <string>

#include "citemesh/common.hpp"
#include "citemesh/matrix.hpp"
#include "citemesh/pajek.hpp"

namespace citemesh {

namespace detail {

/// SPSS string literals double embedded apostrophes.
inline std::string spss_quote(const std::string& s, std::size_t max_len = 120) {
  std::string clipped = s.substr(0, max_len);
  std::string out = "'";
  for (char c : clipped) {
    out.push_back(c);
    if (c == '\'') out.push_back('\'');
  }
  out.push_back('\'');
  return out;
}

}  // namespace detail

/// Writes <basename>.txt (dense rows, space separated) and <basename>.sps
/// (DATA LIST FREE syntax declaring v1..vN, column labels as variable
/// labels, and a save to <basename>.sav). Refuses matrices wider than the
/// dense cap; export those as sparse Pajek files instead.
inline void write_spss_matrix(const SparseLabeledMatrix& m,
                              const std::string& basename_path,
                              int dense_cap = 20000) {
  if (m.rows() == 0 || m.cols() == 0) throw DataError("cannot export an empty matrix");
  if (m.cols() > dense_cap)
    throw DataError("matrix has " + std::to_string(m.cols()) +
                    " columns, over the dense cap of " + std::to_string(dense_cap) +
                    "; use the sparse Pajek export instead");

  const std::string txt_path = basename_path + ".txt";
  const std::string sps_path = basename_path + ".sps";
  auto filename = [](const std::string& p) {
    auto slash = p.find_last_of("/\\");
    return slash == std::string::npos ? p : p.substr(slash + 1);
  };
  const std::string base = filename(basename_path);

  {
    std::ofstream os(txt_path, std::ios::binary);
    if (!os) throw DataError("cannot write " + txt_path);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if (c) os << ' ';
        os << detail::format_weight(m.at(r, c));
      }
      os << '\n';
    }
  }
  {
    std::ofstream os(sps_path, std::ios::binary);
    if (!os) throw DataError("cannot write " + sps_path);
    os << "DATA LIST FREE FILE='" << base << ".txt'\n";
    os << "  / v1 TO v" << m.cols() << ".\n";
    os << "VARIABLE LABELS\n";
    for (int c = 0; c < m.cols(); ++c)
      os << "  v" << (c + 1) << ' ' << detail::spss_quote(m.col_labels[c]) << '\n';
    os << "  .\n";
    os << "SAVE OUTFILE='" << base << ".sav'.\n";
  }
}

}  // namespace citemesh
