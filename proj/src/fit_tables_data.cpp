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

// Source-of-truth JSON asset with the embedded fitted-parameter tables.
// Rows run over dphi (respectively the diagonal delta), columns over dtheta
// (respectively the nominal INR). Gamma cells are [shape, second-parameter]
// with the meaning of the second parameter given by "parametrization";
// normal cells are [mean, variance].

#include "sibeam/models.hpp"

namespace sibeam
{

const char *embedded_fit_tables_json()
{
    return R"json({
  "parametrization": "scale",
  "global": { "mu_db": 20.32, "sigma2_db": 70.69 },
  "range_gamma": {
    "dtheta": [0, 1, 2, 3, 4, 5],
    "dphi": [0, 1, 2, 3, 4, 5],
    "rows_are": "dphi",
    "cells": [
      [null,          [2.74, 3.40],  [4.42, 3.64],  [6.73, 3.15],  [9.50, 2.62],  [12.50, 2.22]],
      [[2.59, 3.19],  [4.52, 4.10],  [6.90, 3.82],  [10.90, 2.94], [16.04, 2.25], [21.69, 1.80]],
      [[4.04, 3.48],  [6.57, 3.85],  [10.69, 3.11], [17.57, 2.21], [25.96, 1.64], [34.67, 1.30]],
      [[5.80, 3.22],  [9.63, 3.16],  [16.31, 2.35], [26.67, 1.63], [38.06, 1.23], [48.77, 1.01]],
      [[7.98, 2.81],  [13.91, 2.49], [23.80, 1.77], [37.32, 1.26], [50.52, 0.99], [61.80, 0.85]],
      [[10.39, 2.44], [18.85, 2.00], [31.67, 1.42], [47.24, 1.05], [61.17, 0.86], [72.50, 0.76]]
    ]
  },
  "min_normal": {
    "dtheta": [0, 1, 2, 3, 4, 5],
    "dphi": [0, 1, 2, 3, 4, 5],
    "rows_are": "dphi",
    "cells": [
      [[20.32, 70.69], [15.04, 102.75], [10.34, 114.62], [6.47, 112.94],   [3.53, 107.37],   [1.31, 101.93]],
      [[15.58, 98.86], [8.32, 148.79],  [2.30, 152.39],  [-2.34, 135.13],  [-5.62, 118.00],  [-7.98, 105.59]],
      [[11.58, 109.04],[3.15, 153.04],  [-3.07, 141.96], [-7.56, 117.66],  [-10.61, 99.81],  [-12.80, 88.34]],
      [[8.23, 106.83], [-0.88, 137.50], [-6.93, 119.30], [-11.07, 96.78],  [-13.87, 82.49],  [-15.89, 73.80]],
      [[5.50, 99.76],  [-3.98, 118.15], [-9.74, 99.32],  [-13.57, 81.48],  [-16.16, 70.95],  [-18.05, 64.68]],
      [[3.39, 93.25],  [-6.27, 103.55], [-11.76, 86.70], [-15.37, 72.63],  [-17.82, 64.54],  [-19.63, 59.62]]
    ]
  },
  "max_normal": {
    "dtheta": [0, 1, 2, 3, 4, 5],
    "dphi": [0, 1, 2, 3, 4, 5],
    "rows_are": "dphi",
    "cells": [
      [[20.32, 70.69], [24.36, 44.95], [26.42, 39.02], [27.63, 36.81], [28.41, 35.64], [29.06, 34.66]],
      [[23.84, 49.63], [26.85, 39.31], [28.64, 35.37], [29.71, 33.95], [30.41, 33.26], [31.00, 32.60]],
      [[25.63, 45.34], [28.42, 37.00], [30.15, 33.27], [31.18, 31.99], [31.85, 31.51], [32.41, 31.00]],
      [[26.89, 43.38], [29.61, 35.48], [31.33, 31.57], [32.35, 30.31], [33.01, 29.93], [33.56, 29.52]],
      [[27.89, 41.95], [30.61, 33.81], [32.35, 29.51], [33.38, 28.13], [34.02, 27.79], [34.57, 27.40]],
      [[28.72, 40.61], [31.46, 32.02], [33.23, 27.27], [34.26, 25.73], [34.90, 25.36], [35.45, 24.95]]
    ]
  },
  "delta_min_gamma": {
    "delta": [1, 2, 3, 4, 5],
    "inr_db": [-20, -10, 0, 10, 20, 30, 40],
    "cells": [
      [[0.19, 1.34],  [0.21, 11.37], [0.89, 10.27], [3.66, 4.05],  [3.26, 3.91],  [3.22, 2.80],  [4.09, 1.47]],
      [[0.18, 4.91],  [0.41, 13.93], [3.06, 4.83],  [10.28, 2.21], [8.67, 2.93],  [5.26, 4.18],  [4.15, 4.03]],
      [[0.21, 9.31],  [0.87, 10.20], [6.49, 2.86],  [17.38, 1.58], [19.94, 1.66], [12.18, 2.74], [7.96, 3.79]],
      [[0.26, 12.40], [1.86, 6.27],  [10.40, 2.07], [24.37, 1.26], [31.12, 1.21], [22.78, 1.77], [20.63, 1.94]],
      [[0.39, 11.99], [2.98, 4.66],  [15.20, 1.57], [31.79, 1.05], [40.47, 1.01], [30.88, 1.45], [36.15, 1.27]]
    ]
  },
  "delta_max_gamma": {
    "delta": [1, 2, 3, 4, 5],
    "inr_db": [-20, -10, 0, 10, 20, 30, 40],
    "cells": [
      [[97.36, 0.39],  [53.69, 0.53],  [22.22, 0.83], [8.27, 1.23],  [3.94, 1.44],  [3.65, 1.09], [3.73, 0.72]],
      [[125.30, 0.35], [74.38, 0.46],  [35.07, 0.68], [14.26, 1.04], [6.18, 1.44],  [4.83, 1.28], [4.76, 0.84]],
      [[132.69, 0.36], [83.02, 0.45],  [42.63, 0.64], [18.35, 0.97], [7.76, 1.44],  [5.40, 1.41], [5.37, 0.88]],
      [[143.23, 0.35], [92.33, 0.43],  [49.46, 0.60], [22.61, 0.89], [9.53, 1.36],  [5.96, 1.46], [6.10, 0.84]],
      [[160.40, 0.32], [107.86, 0.39], [58.95, 0.53], [28.38, 0.78], [12.12, 1.19], [6.53, 1.47], [6.94, 0.79]]
    ]
  }
})json";
}

} // namespace sibeam
