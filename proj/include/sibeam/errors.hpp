// SPDX-License-Identifier: Apache-2.0
//
// sibeam - beamformed self-interference modeling and analysis for
// multi-panel mmWave full-duplex systems
// Copyright (C) 2026 sibeam contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>

namespace sibeam
{

// Error categories map onto the CLI exit codes:
//   ConfigError -> 2 (usage / configuration), DataError -> 3 (malformed or
//   inconsistent data), NumericError -> 4 (non-convergence, domain violations).

class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace sibeam
