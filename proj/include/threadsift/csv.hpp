// Copyright 2026 The threadsift Authors
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

#ifndef THREADSIFT_CSV_HPP_
#define THREADSIFT_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace threadsift::csv {

using Row = std::vector<std::string>;

/// RFC 4180 field: quoted only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// One record terminated by LF.
std::string format_row(const Row& fields);

/// Parses RFC 4180 text (CRLF or LF record separators). A trailing newline
/// does not produce an empty record. Throws threadsift::Error on an
/// unterminated quoted field.
std::vector<Row> parse(std::string_view text);

}  // namespace threadsift::csv

#endif  // THREADSIFT_CSV_HPP_
