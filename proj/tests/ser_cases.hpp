#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace darank::testing {

// Hand-counted slot errors against the ViGGO ontology.
struct SerCase {
  std::string mr;
  std::string text;
  std::size_t missing;
  std::size_t incorrect;
};

inline const std::vector<SerCase>& ser_cases() {
  static const std::string cod =
      "give_opinion(name[Call of Duty: Advanced Warfare], rating[excellent], developer[Sledgehammer Games], "
      "esrb[M (for Mature)])";
  static const std::string worms = "suggest(name[Worms: Reloaded], available_on_steam[yes])";
  static const std::string lba = "inform(name[Little Big Adventure], has_linux_release[no], has_mac_release[no])";
  static const std::string div = "inform(name[Tom Clancy's The Division], has_multiplayer[yes], genres[shooter])";
  static const std::string persp = "request_attribute(player_perspective[])";
  static const std::string payne = "recommend(name[Max Payne 3], esrb[M (for Mature)], rating[good])";
  static const std::vector<SerCase> cases = {
      {cod,
       "Call of Duty: Advanced Warfare must be one of the best games I've ever played. Sledgehammer Games always "
       "nail their M-rated games.",
       0, 0},
      {cod,
       "Call of Duty: Advanced Warfare must be one of the games I've played. Sledgehammer Games always nail their "
       "M-rated games.",
       1, 0},
      {cod, "Call of Duty: Advanced Warfare excellent Sledgehammer Games M for Mature", 0, 0},
      {cod, "Call of Duty: Advanced Warfare is excellent. Sledgehammer Games made it rated E (for Everyone).", 0, 1},
      {cod, "Call of Duty: Advanced Warfare is a poor game by Sledgehammer Games, rated M.", 0, 1},
      {cod, "", 4, 0},
      {cod, "I love Sledgehammer Games.", 2, 0},
      {cod, "Call of Duty: Advanced Warfare", 3, 0},
      {cod, "CALL OF DUTY ADVANCED WARFARE is EXCELLENT, from sledgehammer games, for mature players", 0, 0},
      {cod, "Call of Duty: Advanced Warfare is a terrible T-rated game from Sledgehammer Games.", 0, 2},
      {worms, "I bet you like it when you can play games on Steam, like Worms: Reloaded, right?", 0, 0},
      {worms, "Do you like Worms: Reloaded?", 1, 0},
      {worms, "Worms: Reloaded is not on Steam, right?", 0, 1},
      {worms, "I bet you like games on Steam.", 1, 0},
      {worms, "Not Worms: Reloaded. But is it on Steam?", 0, 0},
      {lba, "Little Big Adventure has no Linux or Mac release.", 0, 0},
      {lba, "Little Big Adventure is available on Linux and Mac.", 0, 2},
      {lba, "Little Big Adventure is not available on Linux, but you can get it on Mac.", 0, 1},
      {lba, "Little Big Adventure.", 2, 0},
      {lba, "Little Big Adventure has no Linux release; Mac too.", 0, 1},
      {div, "Tom Clancy's The Division is a multiplayer shooter.", 0, 0},
      {div, "Tom Clancy's The Division is a shooter without multiplayer.", 0, 1},
      {div, "Tom Clancy's The Division is a shooter you can play with friends.", 0, 0},
      {div, "Tom Clancy's The Division is a shooter.", 1, 0},
      {div, "The Division is a multiplayer shooter.", 1, 0},
      {persp, "Do you have a preferred perspective when playing games?", 0, 0},
      {persp, "What games do you like?", 1, 0},
      {persp, "Do you prefer first person games?", 0, 0},
      {payne, "If you like M-rated games, try Max Payne 3, it's pretty good.", 0, 0},
      {payne, "If you like games for teens, try Max Payne 3, it's bad.", 0, 2},
  };
  return cases;
}

}  // namespace darank::testing
