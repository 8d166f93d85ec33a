# Copyright 2026 The unicover Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Discrete fundamental groups and closeness structures on finite metric spaces."""

from ._unicover import (
    ChainGroupoid,
    Group,
    MetricSpace,
    ParseError,
    ValidationError,
    __version__,
    circle,
    components,
    critical_scales,
    hawaiian,
    load_space,
    pi1,
    punctured_homotopy_search,
    random_cloud,
    run_cli,
    space_from_json,
    space_from_recipe,
    torus_grid,
    wedge_circles,
)

__all__ = [
    "ChainGroupoid",
    "Group",
    "MetricSpace",
    "ParseError",
    "ValidationError",
    "__version__",
    "circle",
    "components",
    "critical_scales",
    "hawaiian",
    "load_space",
    "pi1",
    "punctured_homotopy_search",
    "random_cloud",
    "run_cli",
    "space_from_json",
    "space_from_recipe",
    "torus_grid",
    "wedge_circles",
]
