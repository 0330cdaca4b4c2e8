#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace bnc;
using testutil::ds_from_csv;

TEST_CASE("load_csv reads a small file back verbatim") {
  auto ds = ds_from_csv("f,c\na,y\nb,n\na,y\nb,y\n");
  CHECK(ds.n_cases == 4);
  CHECK(ds.n_attrs() == 2);
  CHECK(ds.class_index == 1);
  CHECK(ds.schema[0].values == std::vector<std::string>{"a", "b"});
  CHECK(ds.schema[1].values == std::vector<std::string>{"y", "n"});
  CHECK(ds.at(0, 0) == 0);
  CHECK(ds.at(1, 0) == 1);
  CHECK(ds.at(3, 1) == 0);
}

TEST_CASE("missing tokens become an explicit '?' category") {
  auto ds = ds_from_csv("stalk,c\nsmooth,e\n?,p\nsmooth,e\n");
  REQUIRE(ds.n_cases == 3);  // no rows dropped
  CHECK(ds.schema[0].values == std::vector<std::string>{"smooth", "?"});
  CHECK(ds.at(1, 0) == 1);
}

TEST_CASE("single data row is a valid dataset") {
  auto ds = ds_from_csv("f,c\nx,y\n");
  CHECK(ds.n_cases == 1);
  // a 1-row training set fails the 2-class invariant only at class level
  CHECK(ds.schema[1].arity() == 1);
}

TEST_CASE("load_csv error paths") {
  LoadOptions opts;
  CHECK_THROWS_AS(ds_from_csv("f,c\na\n"), Error);        // ragged row
  CHECK_THROWS_AS(ds_from_csv(""), Error);                // empty file
  CHECK_THROWS_AS(ds_from_csv("f,c\n\n\n"), Error);       // no data rows
  opts.class_column = "missing";
  CHECK_THROWS_AS(ds_from_csv("f,c\na,y\n", opts), Error);
  // missing class label rejected for training data
  CHECK_THROWS_AS(ds_from_csv("f,c\na,?\nb,y\n"), Error);
  opts = {};
  opts.allow_missing_class = true;
  CHECK_NOTHROW(ds_from_csv("f,c\na,?\nb,y\n", opts));
}

TEST_CASE("class column by name or index") {
  LoadOptions opts;
  opts.class_column = "label";
  auto ds = ds_from_csv("label,f\ny,a\nn,b\n", opts);
  CHECK(ds.class_index == 0);
  opts.class_column = "0";
  ds = ds_from_csv("label,f\ny,a\nn,b\n", opts);
  CHECK(ds.class_index == 0);
}

TEST_CASE("ragged row error carries the row number") {
  try {
    ds_from_csv("f,c\na,y\nb\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}

TEST_CASE("csv round trip preserves cells and row order") {
  auto ds = ds_from_csv("f,g,c\na,1,y\nb,2,n\na,2,y\nb,1,?\n",
                        [] {
                          LoadOptions o;
                          o.allow_missing_class = true;
                          return o;
                        }());
  std::ostringstream out;
  write_csv(ds, out);
  LoadOptions opts;
  opts.allow_missing_class = true;
  auto ds2 = ds_from_csv(out.str(), opts);
  CHECK(ds2.cells == ds.cells);
  CHECK(ds2.schema[0].values == ds.schema[0].values);
  std::ostringstream out2;
  write_csv(ds2, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("category index encoding is first-appearance stable") {
  auto ds = ds_from_csv("f,c\nz,y\nq,n\nz,y\nm,n\nq,y\n");
  // i-th distinct value seen always maps to index i
  CHECK(ds.schema[0].values == std::vector<std::string>{"z", "q", "m"});
  CHECK(ds.at(0, 0) == 0);
  CHECK(ds.at(1, 0) == 1);
  CHECK(ds.at(2, 0) == 0);
  CHECK(ds.at(3, 0) == 2);
}

TEST_CASE("base schema extension keeps training indices and appends new labels") {
  auto train = ds_from_csv("f,c\na,y\nb,n\n");
  LoadOptions opts;
  opts.base_schema = &train.schema;
  auto test = ds_from_csv("f,c\nb,y\nz,n\n", opts);
  CHECK(test.schema[0].values == std::vector<std::string>{"a", "b", "z"});
  CHECK(test.at(0, 0) == 1);
  CHECK(test.at(1, 0) == 2);

  opts.strict_schema = true;
  CHECK_THROWS_AS(ds_from_csv("f,c\nz,y\nb,n\n", opts), Error);
}
