/*
 * Copyright 2026 The iprp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Writes a desk-scale synthetic collection (run + qrels) and an annotation
// log drawn from a profile file, for trying the iprp pipeline end to end.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "iprp/formats.hpp"
#include "iprp/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic inputs for iprp", "make_synthetic_data"};
  std::string out_dir;
  std::string profiles_path;
  iprp::SyntheticOptions collection;
  iprp::AnnotationOptions annotations;
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--profiles", profiles_path, "Profiles the annotators follow")
      ->required();
  app.add_option("--topics", collection.topics)->capture_default_str();
  app.add_option("--candidates", collection.candidates)->capture_default_str();
  app.add_option("--records", annotations.records)->capture_default_str();
  app.add_option("--users", annotations.users)->capture_default_str();
  app.add_option("--seed", collection.seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  annotations.seed = collection.seed;

  try {
    const auto profiles = iprp::parse_profiles_file(profiles_path);
    const auto data = iprp::make_synthetic_collection(collection);
    const auto log = iprp::make_synthetic_annotations(profiles, annotations);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    {
      auto out = iprp::open_output(dir / "run.txt");
      iprp::write_run(out, data.run);
    }
    {
      auto out = iprp::open_output(dir / "qrels.txt");
      iprp::write_qrels(out, data.qrels);
    }
    {
      auto out = iprp::open_output(dir / "annotations.csv");
      iprp::write_annotation_log(out, log);
    }
    std::cout << "wrote run.txt, qrels.txt and annotations.csv to " << out_dir
              << '\n';
  } catch (const iprp::DataError& e) {
    std::cerr << "make_synthetic_data: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
