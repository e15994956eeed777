#include <gtest/gtest.h>
TEST(Placeholder, Pipeline) {}
