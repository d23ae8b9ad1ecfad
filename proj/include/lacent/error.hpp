/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lacent {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input line while reading an edge list or a broadcast log.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line_number)
        : Error("line " + std::to_string(line_number) + ": " + msg),
          line_number_(line_number) {}

    std::size_t line_number() const noexcept { return line_number_; }

private:
    std::size_t line_number_;
};

/// Graph has no edges, so degree-based thresholds are undefined.
class EmptyGraphError : public Error {
public:
    using Error::Error;
    EmptyGraphError() : Error("graph has no edges") {}
};

/// Degree conditioning would produce a zero divisor.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Requested attenuation is at or beyond the convergence boundary.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// A parameter is outside its documented range.
class ParamError : public Error {
public:
    using Error::Error;
};

/// Dense linear system has a (numerically) zero pivot.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Two vectors that must share a node set have different lengths.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Broadcast log contains no records.
class EmptyLogError : public Error {
public:
    using Error::Error;
    EmptyLogError() : Error("broadcast log is empty") {}
};

/// Not enough overlapping keys to compute a rank correlation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace lacent
