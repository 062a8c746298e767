#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/types.hpp"

namespace framelab::io {

/// %.17g, '.' decimal separator regardless of locale.
std::string format_double(double x);

/// Finite values as numbers, otherwise "inf" / "-inf" / "nan" strings.
nlohmann::json number(double x);
nlohmann::json complex_pair(cplx z);

/// Row-major list of rows of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
/// One line per row, 2*cols columns re_0,im_0,re_1,im_1,...
void write_matrix_csv(std::ostream& out, const CMatrix& m);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

}  // namespace framelab::io
