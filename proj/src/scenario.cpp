// Copyright 2026 The dske-kit Authors
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

#include <istream>
#include <sstream>
#include <utility>

#include "dske/simnet.hpp"

namespace dske {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("scenario config line " + std::to_string(line) +
                           ": " + what);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& value, std::size_t line) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(value, &used, 0);
    if (used != value.size()) fail(line, "trailing characters in number");
    return v;
  } catch (const std::invalid_argument&) {
    fail(line, "expected a number, got '" + value + "'");
  } catch (const std::out_of_range&) {
    fail(line, "number out of range: '" + value + "'");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ChannelLeg parse_leg(const std::string& s, std::size_t line) {
  if (s == "alice-hub") return ChannelLeg::alice_to_hub;
  if (s == "hub-bob") return ChannelLeg::hub_to_bob;
  fail(line, "unknown channel leg '" + s + "'");
}

struct RawEntry {
  std::string value;
  std::size_t line;
};

}  // namespace

ScenarioConfig parse_scenario(std::istream& in) {
  std::map<std::string, RawEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    entries[key] = RawEntry{value, line_no};
  }

  ScenarioConfig cfg;
  std::map<std::string, RawEntry> pending = entries;
  const auto take = [&pending](const std::string& key) {
    std::optional<RawEntry> entry;
    const auto it = pending.find(key);
    if (it != pending.end()) {
      entry = it->second;
      pending.erase(it);
    }
    return entry;
  };

  if (const auto e = take("field")) cfg.field = e->value;
  const FieldSpec* spec = FieldSpec::find(cfg.field);
  if (spec == nullptr) {
    throw std::runtime_error("scenario config: unknown field '" + cfg.field +
                             "'");
  }
  const auto parse_element = [&spec](const std::string& v, std::size_t ln) {
    const std::uint64_t raw = parse_u64(v, ln);
    if (!spec->contains(raw)) fail(ln, "element exceeds field width");
    return FieldElement(raw, *spec);
  };

  if (const auto e = take("n")) cfg.n = static_cast<int>(parse_u64(e->value, e->line));
  if (const auto e = take("k")) cfg.k = static_cast<int>(parse_u64(e->value, e->line));
  if (const auto e = take("m")) cfg.m = static_cast<int>(parse_u64(e->value, e->line));
  if (const auto e = take("mode")) {
    if (e->value == "skeleton") cfg.mode = ProtocolMode::skeleton;
    else if (e->value == "general") cfg.mode = ProtocolMode::general;
    else fail(e->line, "mode must be skeleton or general");
  }
  if (const auto e = take("table_length")) {
    cfg.table_length = parse_u64(e->value, e->line);
  }
  if (const auto e = take("deadline")) cfg.deadline = parse_u64(e->value, e->line);
  if (const auto e = take("trials")) cfg.trials = parse_u64(e->value, e->line);
  if (const auto e = take("master_seed")) {
    cfg.master_seed = parse_u64(e->value, e->line);
  }
  if (const auto e = take("delivery")) {
    if (e->value == "in-order") cfg.delivery = DeliveryMode::in_order;
    else if (e->value == "seeded-shuffle") cfg.delivery = DeliveryMode::seeded_shuffle;
    else if (e->value == "drop-set") cfg.delivery = DeliveryMode::drop_set;
    else fail(e->line, "unknown delivery mode '" + e->value + "'");
  }
  if (const auto e = take("drop")) {
    for (const auto& item : split_list(e->value)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) fail(e->line, "drop entries are leg:hub");
      cfg.drop.emplace_back(
          parse_leg(trim(item.substr(0, colon)), e->line),
          static_cast<int>(parse_u64(trim(item.substr(colon + 1)), e->line)));
    }
  }

  if (const auto e = take("adversary.mode")) {
    if (e->value == "passive") cfg.adversary.mode = AdversaryMode::passive;
    else if (e->value == "active") cfg.adversary.mode = AdversaryMode::active;
    else fail(e->line, "adversary.mode must be passive or active");
  }
  if (const auto e = take("adversary.compromised")) {
    for (const auto& item : split_list(e->value)) {
      cfg.adversary.compromised.insert(
          static_cast<int>(parse_u64(item, e->line)));
    }
  }
  if (const auto e = take("adversary.hub_behavior")) {
    if (e->value == "honest-relay") cfg.adversary.hub_behavior = HubBehavior::honest_relay;
    else if (e->value == "random-share") cfg.adversary.hub_behavior = HubBehavior::random_share;
    else if (e->value == "share-shift") cfg.adversary.hub_behavior = HubBehavior::share_shift;
    else fail(e->line, "unknown hub behavior '" + e->value + "'");
  }

  BestKnownAttack attack;
  bool have_attack = false;
  if (const auto e = take("adversary.shift.target_hub")) {
    attack.target_hub = static_cast<int>(parse_u64(e->value, e->line));
    have_attack = true;
  }
  if (const auto e = take("adversary.shift.subset")) {
    for (const auto& item : split_list(e->value)) {
      attack.subset.push_back(static_cast<int>(parse_u64(item, e->line)));
    }
    have_attack = true;
  }
  if (const auto e = take("adversary.shift.delta")) {
    for (const auto& item : split_list(e->value)) {
      attack.secret_delta.push_back(parse_element(item, e->line));
    }
    have_attack = true;
  }
  if (const auto e = take("adversary.shift.tag_delta")) {
    attack.tag_delta = parse_element(e->value, e->line);
    have_attack = true;
  }
  if (have_attack) cfg.adversary.attack = std::move(attack);

  // channel.<leg>.<hub> = faithful | block | mutate
  for (auto it = pending.begin(); it != pending.end();) {
    const std::string& key = it->first;
    if (key.rfind("channel.", 0) == 0) {
      const auto rest = key.substr(8);
      const auto dot = rest.find('.');
      if (dot == std::string::npos) fail(it->second.line, "channel keys are channel.<leg>.<hub>");
      const ChannelLeg leg = parse_leg(rest.substr(0, dot), it->second.line);
      const int hub =
          static_cast<int>(parse_u64(rest.substr(dot + 1), it->second.line));
      ChannelPolicy policy;
      if (it->second.value == "faithful") policy.kind = ChannelPolicyKind::faithful;
      else if (it->second.value == "block") policy.kind = ChannelPolicyKind::block;
      else if (it->second.value == "mutate") policy.kind = ChannelPolicyKind::mutate;
      else fail(it->second.line, "unknown channel policy '" + it->second.value + "'");
      cfg.adversary.channel_policies[{leg, hub}] = policy;
      it = pending.erase(it);
    } else {
      ++it;
    }
  }

  if (!pending.empty()) {
    const auto& [key, entry] = *pending.begin();
    fail(entry.line, "unknown key '" + key + "'");
  }
  return cfg;
}

ScenarioConfig parse_scenario_string(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

}  // namespace dske
