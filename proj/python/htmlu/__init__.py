# Copyright 2026 The htmlu Authors.
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
"""HTML understanding toolkit.

Snippet extraction, description-corpus distillation from WARC archives,
model input/output codecs, simulated navigation tasks and text metrics.
"""

from ._htmlu import (
    ActionParseError,
    Error,
    IoError,
    MalformedWarc,
    ParseError,
    TransportError,
    UserError,
    bleu,
    build_fewshot_prompt,
    categories,
    clean_prompt_example,
    closest_description,
    decode_category,
    distill,
    element_refs,
    encode_action,
    encode_navigation_input,
    exact_match,
    extract_snippet,
    normalize,
    parse_action,
    read_warc,
    rouge1,
    run_episode,
    strip_closing_tags,
    task_names,
)

__all__ = [
    "ActionParseError",
    "Error",
    "IoError",
    "MalformedWarc",
    "ParseError",
    "TransportError",
    "UserError",
    "bleu",
    "build_fewshot_prompt",
    "categories",
    "clean_prompt_example",
    "closest_description",
    "decode_category",
    "distill",
    "element_refs",
    "encode_action",
    "encode_navigation_input",
    "exact_match",
    "extract_snippet",
    "normalize",
    "parse_action",
    "read_warc",
    "rouge1",
    "run_episode",
    "strip_closing_tags",
    "task_names",
]

__version__ = "0.1.0"
