#include "wolf/agents/assets.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wolf::agents {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AssetError("cannot read asset " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Templates are stored with a trailing newline; the prompt builder adds its own.
std::string read_template(const std::filesystem::path& path) {
  std::string text = read_file(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

json read_json(const std::filesystem::path& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw AssetError("invalid JSON in " + path.string());
  return j;
}

std::vector<std::string> string_list(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_array()) throw AssetError(where + ": missing list \"" + key + "\"");
  std::vector<std::string> out;
  for (const auto& item : j.at(key)) out.push_back(item.get<std::string>());
  return out;
}

PersonaCard load_persona(const std::filesystem::path& path) {
  const json j = read_json(path);
  const std::string where = path.filename().string();
  PersonaCard p;
  p.id = j.value("id", path.stem().string());
  for (const auto& r : string_list(j, "roles", where)) {
    auto role = game::role_from_string(r);
    if (!role) throw AssetError(where + ": unknown role " + r);
    p.roles.push_back(*role);
  }
  p.profile = string_list(j, "profile", where);
  p.examples = string_list(j, "examples", where);
  auto in_range = [](std::size_t n) { return n >= 3 && n <= 5; };
  if (!in_range(p.profile.size()) || !in_range(p.examples.size())) {
    throw AssetError(where + ": personas carry 3-5 profile bullets and 3-5 utterance examples");
  }
  return p;
}

StrategyCard parse_card(const json& j, const std::string& where) {
  StrategyCard c;
  c.id = j.at("id").get<std::string>();
  const std::string day = j.value("day", "any");
  if (day == "1") {
    c.day = ApplicableDay::Day1;
  } else if (day == "2") {
    c.day = ApplicableDay::Day2;
  } else if (day == "any") {
    c.day = ApplicableDay::Any;
  } else {
    throw AssetError(where + ": card " + c.id + " has bad day \"" + day + "\"");
  }
  c.title = j.value("title", c.id);
  c.guideline = j.at("guideline").get<std::string>();
  const std::string mode = j.value("selection", "llm_selected");
  if (mode == "llm_selected") {
    c.selection = SelectionMode::LlmSelected;
  } else if (mode == "fixed_sequence") {
    c.selection = SelectionMode::FixedSequence;
  } else {
    throw AssetError(where + ": card " + c.id + " has bad selection \"" + mode + "\"");
  }
  return c;
}

void validate(const AgentAssets& a) {
  for (game::Role r : {game::Role::Villager, game::Role::Seer, game::Role::Werewolf, game::Role::Possessed}) {
    (void)a.persona_for(r);
  }
  if (a.cards_for("seer", 1).size() != 5) throw AssetError("the seer needs exactly five strategy cards");
  std::set<std::string> day1;
  std::set<std::string> day2;
  for (const auto& c : a.cards.at("werewolf")) {
    if (c.day == ApplicableDay::Any) throw AssetError("werewolf card " + c.id + " must be bound to day 1 or 2");
    (c.day == ApplicableDay::Day1 ? day1 : day2).insert(c.id);
  }
  if (day1.empty() || day2.empty()) throw AssetError("werewolf needs both day-1 and day-2 card sets");
  for (const char* id : {"common.greeting", "common.vote_declaration", "seer.vote_declaration", "villager.discussion",
                         "possessed.day1.fake_claim", "possessed.day1.persuade", "possessed.day2.come_out",
                         "possessed.day2.invite_werewolf"}) {
    (void)a.card(id);
  }
}

}  // namespace

bool PersonaCard::binds(game::Role r) const { return std::find(roles.begin(), roles.end(), r) != roles.end(); }

bool StrategyCard::applies_on(int d) const {
  switch (day) {
    case ApplicableDay::Day1: return d <= 1;
    case ApplicableDay::Day2: return d >= 2;
    case ApplicableDay::Any: return true;
  }
  return true;
}

const PersonaCard& AgentAssets::persona_for(game::Role role) const {
  for (const auto& p : personas) {
    if (p.binds(role)) return p;
  }
  throw AssetError("no persona bound to role " + std::string(game::to_string(role)));
}

const StrategyCard& AgentAssets::card(std::string_view id) const {
  for (const auto& [group, list] : cards) {
    for (const auto& c : list) {
      if (c.id == id) return c;
    }
  }
  throw AssetError("unknown strategy card " + std::string(id));
}

std::vector<StrategyCard> AgentAssets::cards_for(std::string_view group, int day) const {
  std::vector<StrategyCard> out;
  auto it = cards.find(std::string(group));
  if (it == cards.end()) return out;
  for (const auto& c : it->second) {
    if (c.applies_on(day)) out.push_back(c);
  }
  return out;
}

AgentAssets load_assets(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw AssetError("asset directory not found: " + dir.string());
  AgentAssets a;

  std::vector<std::filesystem::path> persona_files;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "personas")) {
    if (entry.path().extension() == ".json") persona_files.push_back(entry.path());
  }
  std::sort(persona_files.begin(), persona_files.end());
  for (const auto& f : persona_files) a.personas.push_back(load_persona(f));

  for (const char* group : {"common", "villager", "seer", "werewolf", "possessed"}) {
    const auto path = dir / "strategies" / (std::string(group) + ".json");
    const json j = read_json(path);
    auto& list = a.cards[group];
    for (const auto& c : j.at("cards")) list.push_back(parse_card(c, path.filename().string()));
    if (j.contains("guidelines")) a.seer_guidelines = j.at("guidelines").get<std::string>();
    if (j.contains("attack_strategy")) a.attack_strategy = j.at("attack_strategy").get<std::string>();
  }

  a.villager_reasoning_demos = read_template(dir / "demos" / "villager_reasoning.txt");
  a.villager_utterance_demos = read_template(dir / "demos" / "villager_utterance.txt");

  auto& t = a.templates;
  const auto tdir = dir / "templates";
  t.task = read_template(tdir / "task.txt");
  t.rules = read_template(tdir / "rules.txt");
  t.generate = read_template(tdir / "generate.txt");
  t.summary = read_template(tdir / "summary.txt");
  t.decide_vote = read_template(tdir / "decide_vote.txt");
  t.decide_divine = read_template(tdir / "decide_divine.txt");
  t.attack = read_template(tdir / "attack.txt");
  t.select_strategy = read_template(tdir / "select_strategy.txt");
  t.possessed_infer = read_template(tdir / "possessed_infer.txt");
  t.villager_reasoning = read_template(tdir / "villager_reasoning.txt");
  t.reformat = read_template(tdir / "reformat.txt");

  validate(a);
  return a;
}

std::filesystem::path default_asset_dir() {
#ifdef WOLF_DEFAULT_ASSET_DIR
  return WOLF_DEFAULT_ASSET_DIR;
#else
  return "assets";
#endif
}

}  // namespace wolf::agents
