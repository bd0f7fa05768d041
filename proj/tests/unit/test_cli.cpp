#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(BRANDTLAB_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "brandtlab_cli_test";
    return dir;
}

} // namespace

TEST(Cli, ExitCodes) {
    const auto dir = scratch();
    std::filesystem::remove_all(dir);
    const std::string cache = "--cache-dir " + dir.string();
    EXPECT_EQ(run("analyze 12 " + cache), 2);
    EXPECT_EQ(run("analyze 1 " + cache), 2);
    EXPECT_EQ(run("analyze 37 --coeffs 3 " + cache), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("sweep 20 10 " + cache), 2);
    EXPECT_EQ(run("analyze 11 " + cache), 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "level_11.json"));
    EXPECT_EQ(run("verify " + (dir / "level_11.json").string()), 0);
    EXPECT_EQ(run("verify " + (dir / "missing.json").string()), 1);
    EXPECT_EQ(run("sweep 2 13 --json --oracle " + cache), 0);
    EXPECT_EQ(run("analyze 37 --json --coeffs 12 --seed 7 " + cache), 0);
    std::filesystem::remove_all(dir);
}
