#include "grpx/assets.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "grpx/coset_table.hpp"
#include "grpx/sha256.hpp"

namespace grpx {

std::string asset_dir() {
  const char* env = std::getenv("GRPX_ASSET_DIR");
  return env && *env ? env : "data";
}

std::string read_asset_text(const std::string& filename) {
  std::string path = asset_dir() + "/" + filename;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("asset not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& filename) {
  return parse_presentation(read_asset_text(filename));
}

Group load_group(const std::string& filename) {
  return Group::parse_grp(read_asset_text(filename));
}

GModule load_module(const std::string& filename, const Group& g) {
  GModule m = GModule::from_mod(read_asset_text(filename));
  if (m.ngens() != g.gens().size())
    throw std::runtime_error(filename + ": generator count does not match the group");
  m.group = g;
  return m;
}

AssetReport verify_assets(bool enumerate_presentations) {
  AssetReport rep;
  std::string manifest;
  try {
    manifest = read_asset_text("manifest.txt");
  } catch (const std::exception& e) {
    rep.issues.push_back({"manifest.txt", e.what()});
    return rep;
  }
  std::istringstream lines(manifest);
  std::string line;
  std::vector<std::string> files;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    auto sp = line.find(' ');
    if (sp == std::string::npos) {
      rep.issues.push_back({"manifest.txt", "malformed line: " + line});
      continue;
    }
    std::string hash = line.substr(0, sp), file = line.substr(sp + 1);
    ++rep.checked;
    std::string text;
    try {
      text = read_asset_text(file);
    } catch (const std::exception& e) {
      rep.issues.push_back({file, "missing"});
      continue;
    }
    if (sha256_hex(text) != hash) {
      rep.issues.push_back({file, "hash mismatch"});
      continue;
    }
    files.push_back(file);
  }
  auto listed = [&](const std::string& f) {
    for (const auto& x : files)
      if (x == f) return true;
    return false;
  };
  for (const auto& file : files) {
    try {
      if (file.size() > 5 && file.substr(file.size() - 5) == ".pres") {
        Presentation p = parse_presentation(read_asset_text(file));
        std::string grp = file.substr(0, file.size() - 5) + ".grp";
        if (listed(grp)) {
          Group g = load_group(grp);
          if (p.expected_order && g.order() != *p.expected_order)
            rep.issues.push_back({file, "group order does not match the stated order"});
          else if (enumerate_presentations && !verify_presentation(p, g))
            rep.issues.push_back({file, "presentation does not present the bundled group"});
        }
      } else if (file.size() > 4 && file.substr(file.size() - 4) == ".grp") {
        Group g = load_group(file);
        (void)g.order();
      } else if (file.size() > 4 && file.substr(file.size() - 4) == ".mod") {
        GModule m = GModule::from_mod(read_asset_text(file));
        for (const auto& x : m.mats)
          if (!x.inverse()) throw std::runtime_error("singular generator matrix");
      }
    } catch (const std::exception& e) {
      rep.issues.push_back({file, e.what()});
    }
  }
  return rep;
}

}  // namespace grpx
