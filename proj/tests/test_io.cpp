#include <gtest/gtest.h>

#include <filesystem>

#include "ietpc/io.hpp"

using namespace ietpc;

TEST(Io, IetRoundTrip) {
  const Iet t = Iet::rotation(Number(2) - Number::golden_ratio());
  const Json j = to_json(t);
  EXPECT_EQ(j.at("type"), "iet");
  const Iet back = iet_from_json(j);
  EXPECT_EQ(back.breakpoints(), t.breakpoints());
  EXPECT_EQ(back.translations(), t.translations());
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(Io, PcRoundTripAndDeterminism) {
  const ConstructedPc cpc = build_pc_from_iet(Iet::rotation(Number(2) - Number::golden_ratio()), 40);
  const std::string text = to_json(cpc.map).dump(2);
  const Map back = map_from_json(Json::parse(text));
  ASSERT_TRUE(std::holds_alternative<PiecewiseContraction>(back));
  EXPECT_EQ(to_json(std::get<PiecewiseContraction>(back)).dump(2), text);
  const ConstructedPc again = build_pc_from_iet(Iet::rotation(Number(2) - Number::golden_ratio()), 40);
  EXPECT_EQ(to_json(again.map).dump(2), text);
}

TEST(Io, Rejections) {
  auto kind = [](const std::string& text) {
    try {
      map_from_json(Json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind(R"({"type":"iet","breakpoints":["0","1"],"signs":[1],"translations":["0"],"extra":1})"),
            ErrorKind::ParseError);
  EXPECT_EQ(kind(R"({"type":"torus"})"), ErrorKind::ParseError);
  EXPECT_EQ(kind(R"({"type":"iet","breakpoints":["0","1/2","1"],"signs":[1,1],"translations":["1/4","0"]})"),
            ErrorKind::NotBijective);
  EXPECT_EQ(kind(R"({"type":"pc","breakpoints":["0","1"],"slopes":["1"],"intercepts":["0"]})"),
            ErrorKind::NotContracting);
  EXPECT_EQ(kind(R"({"type":"iet","breakpoints":["0","1"],"signs":[2],"translations":["0"]})"),
            ErrorKind::ParseError);
}

TEST(Io, CertificateRoundTrip) {
  const PiecewiseContraction f({Number(0), Number::rational(1, 2), Number(1)},
                               {Number::rational(1, 2), Number::rational(1, 2)},
                               {Number::rational(3, 4), Number::rational(-1, 4)});
  const auto cert = certify_periodic(f, Number(0), 100);
  ASSERT_TRUE(cert);
  const PeriodicCertificate back = certificate_from_json(Json::parse(to_json(*cert).dump()));
  EXPECT_EQ(back.cylinder, cert->cylinder);
  EXPECT_EQ(back.image, cert->image);
  EXPECT_EQ(back.word, cert->word);
  EXPECT_TRUE(validate_certificate(f, Number(0), back));
}

TEST(Io, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "ietpc_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  write_atomic(path, "first");
  write_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
  std::filesystem::remove_all(dir);
}
