// SPDX-License-Identifier: Apache-2.0
//
// File helpers shared by the module serializers. Not installed.

#pragma once

#include "luc/linalg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace luc::detail {

/// 17 significant digits, round-trip exact.
std::string format17(double v);

void write_text(const std::string& path, const std::string& text);
nlohmann::json read_json(const std::string& path);

void write_csv(const std::string& path, const DenseMatrix& m, const std::vector<std::string>& header);
DenseMatrix read_csv(const std::string& path);

nlohmann::json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const nlohmann::json& j);

} // namespace luc::detail
