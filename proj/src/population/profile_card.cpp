#include "credsim/population/profile_card.hpp"

#include <array>

namespace credsim {

std::string_view to_string(ProfileField f) {
  switch (f) {
    case ProfileField::AncestryReport: return "ancestryReport";
    case ProfileField::Location: return "location";
    case ProfileField::AncestorBirthLocations: return "ancestorBirthLocations";
    case ProfileField::FamilyNames: return "familyNames";
    case ProfileField::ProfilePicture: return "profilePictureRef";
    case ProfileField::BirthYear: return "birthYear";
    case ProfileField::FamilyTreeLink: return "familyTreeLink";
    case ProfileField::IntroText: return "introText";
  }
  return "unknown";
}

FieldMask ProfileCard::present_fields() const noexcept {
  FieldMask m = 0;
  if (ancestryReport) m |= field_bit(ProfileField::AncestryReport);
  if (location) m |= field_bit(ProfileField::Location);
  if (ancestorBirthLocations) m |= field_bit(ProfileField::AncestorBirthLocations);
  if (familyNames) m |= field_bit(ProfileField::FamilyNames);
  if (profilePictureRef) m |= field_bit(ProfileField::ProfilePicture);
  if (birthYear) m |= field_bit(ProfileField::BirthYear);
  if (familyTreeLink) m |= field_bit(ProfileField::FamilyTreeLink);
  if (introText) m |= field_bit(ProfileField::IntroText);
  return m;
}

ProfileCard make_profile_card(const UserAccount& account, FieldMask shared) {
  static constexpr std::array<std::string_view, 6> kRelationships = {
      "Parent/Child", "Sibling", "First Cousin", "Second Cousin", "Third Cousin", "Distant Cousin"};
  static constexpr std::array<double, 6> kSharedDna = {50.0, 50.0, 12.5, 3.125, 0.78, 0.2};

  const auto id = to_index(account.id);
  const auto tag = std::to_string(id);
  const auto has = [shared](ProfileField f) { return (shared & field_bit(f)) != 0; };

  ProfileCard card;
  card.displayName = "Relative " + tag;
  card.lastLogin = account.lastLogin;
  card.relationshipLabel = static_cast<RelationshipLabel>(id % 3);
  card.predictedRelationship = std::string(kRelationships[id % kRelationships.size()]);
  card.sharedDnaPercent = kSharedDna[id % kSharedDna.size()];

  if (has(ProfileField::AncestryReport)) card.ancestryReport = "ancestry-report-" + tag;
  if (has(ProfileField::Location)) card.location = "region-" + std::to_string(id % 50);
  if (has(ProfileField::AncestorBirthLocations)) card.ancestorBirthLocations = "birthplaces-" + tag;
  if (has(ProfileField::FamilyNames)) card.familyNames = "surnames-" + tag;
  if (has(ProfileField::ProfilePicture)) card.profilePictureRef = "img://" + tag;
  if (has(ProfileField::BirthYear)) card.birthYear = 1940 + static_cast<int>(id % 65);
  if (has(ProfileField::FamilyTreeLink) && account.optInFamilyTree) card.familyTreeLink = "tree://" + tag;
  if (has(ProfileField::IntroText)) card.introText = "intro-" + tag;
  return card;
}

}  // namespace credsim
