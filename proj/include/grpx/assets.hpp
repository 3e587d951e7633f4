#pragma once

#include <string>
#include <vector>

#include "grpx/module.hpp"
#include "grpx/presentation.hpp"

namespace grpx {

/// Directory holding the bundled data files: $GRPX_ASSET_DIR when set,
/// otherwise "data" relative to the working directory.
std::string asset_dir();

/// Contents of an asset file; throws std::runtime_error when missing.
std::string read_asset_text(const std::string& filename);

Presentation load_presentation(const std::string& filename);
Group load_group(const std::string& filename);

/// Load a module and attach it to its group (generator counts must match).
GModule load_module(const std::string& filename, const Group& g);

struct AssetIssue {
  std::string file;
  std::string message;
};

struct AssetReport {
  int checked = 0;
  std::vector<AssetIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Verify every file listed in the bundled manifest: hashes match, files
/// parse, and each presentation with a same-named group file presents that
/// group (coset enumeration to its order).
AssetReport verify_assets(bool enumerate_presentations = true);

}  // namespace grpx
