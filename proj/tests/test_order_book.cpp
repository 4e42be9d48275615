#include <stdexcept>

#include "doctest.h"
#include "lobnet/order_book.hpp"
#include "lobnet/random.hpp"
#include "support/reference_matcher.hpp"

using namespace lobnet;

namespace {

TickPrice ticks(std::int64_t t) { return TickPrice{t}; }

} // namespace

TEST_SUITE("order_book") {

TEST_CASE("quotes on a two-sided book") {
  OrderBook book(0.1);
  book.submit_limit(1, Side::Bid, ticks(981), 10, 0.0);
  book.submit_limit(1, Side::Bid, ticks(979), 5, 0.0);
  book.submit_limit(2, Side::Ask, ticks(984), 7, 0.0);
  book.submit_limit(2, Side::Ask, ticks(986), 3, 0.0);

  const BookQuotes q = book.quotes();
  REQUIRE(q.best_bid);
  REQUIRE(q.best_ask);
  CHECK(q.best_bid->ticks == 981);
  CHECK(q.best_ask->ticks == 984);
  CHECK(*q.mid == doctest::Approx(98.25).epsilon(1e-12));
  CHECK(*q.spread == doctest::Approx(0.3).epsilon(1e-12));

  // A buy below the best ask rests without trading.
  const LimitReport r = book.submit_limit(3, Side::Bid, ticks(980), 20, 1.0);
  CHECK(r.trades.empty());
  CHECK(r.rested_volume == 20);
  CHECK(book.quotes().best_bid->ticks == 981);
}

TEST_CASE("one-sided and empty books have no mid") {
  OrderBook book;
  CHECK_FALSE(book.quotes().mid);
  book.submit_limit(1, Side::Ask, ticks(10000), 1, 0.0);
  CHECK_FALSE(book.quotes().mid);
  CHECK_FALSE(book.quotes().best_bid);
}

TEST_CASE("marketable limit walks the queue in time priority and rests the remainder") {
  OrderBook book(0.01);
  const auto a = book.submit_limit(1, Side::Ask, ticks(10002), 3, 0.0).resting_order;
  const auto b = book.submit_limit(2, Side::Ask, ticks(10002), 4, 1.0).resting_order;

  const LimitReport r = book.submit_limit(9, Side::Bid, ticks(10003), 10, 2.0);
  REQUIRE(r.trades.size() == 2);
  CHECK(r.trades[0].maker_order == *a);
  CHECK(r.trades[0].volume == 3);
  CHECK(r.trades[0].price.ticks == 10002);
  CHECK(r.trades[0].maker_filled);
  CHECK(r.trades[1].maker_order == *b);
  CHECK(r.trades[1].volume == 4);
  CHECK(r.rested_volume == 3);
  REQUIRE(r.resting_order);
  CHECK(book.find(*r.resting_order)->price.ticks == 10003);
  CHECK(book.quotes().best_bid->ticks == 10003);
  CHECK_FALSE(book.quotes().best_ask);
}

TEST_CASE("trades execute at the maker price") {
  OrderBook book;
  book.submit_limit(1, Side::Bid, ticks(9990), 5, 0.0);
  const LimitReport r = book.submit_limit(2, Side::Ask, ticks(9000), 2, 1.0);
  REQUIRE(r.trades.size() == 1);
  CHECK(r.trades[0].price.ticks == 9990);
  CHECK(r.trades[0].aggressor == Side::Ask);
  CHECK_FALSE(r.resting_order);
}

TEST_CASE("market order sweeps levels and discards the unfilled part") {
  OrderBook book;
  book.submit_limit(1, Side::Ask, ticks(101), 2, 0.0);
  book.submit_limit(1, Side::Ask, ticks(102), 3, 0.0);
  const MarketReport r = book.submit_market(2, Side::Bid, 8, 1.0);
  REQUIRE(r.trades.size() == 2);
  CHECK(r.trades[0].price.ticks == 101);
  CHECK(r.trades[1].price.ticks == 102);
  CHECK(r.discarded_volume == 3);
  CHECK(book.resting_orders() == 0);

  const MarketReport empty = book.submit_market(2, Side::Ask, 4, 2.0);
  CHECK(empty.trades.empty());
  CHECK(empty.discarded_volume == 4);
}

TEST_CASE("cancellation returns remaining volume once") {
  OrderBook book;
  const auto id = book.submit_limit(1, Side::Bid, ticks(500), 10, 0.0).resting_order;
  REQUIRE(id);
  book.submit_market(2, Side::Ask, 4, 1.0);
  CHECK(book.cancel(*id) == Volume{6});
  CHECK_FALSE(book.cancel(*id));
  CHECK_FALSE(book.quotes().best_bid);
  CHECK(book.depth_snapshot().empty());
}

TEST_CASE("cancelling a fully executed order reports it gone") {
  OrderBook book;
  const auto id = book.submit_limit(1, Side::Ask, ticks(500), 3, 0.0).resting_order;
  book.submit_market(2, Side::Bid, 3, 1.0);
  CHECK_FALSE(book.cancel(*id));
}

TEST_CASE("depth snapshot aggregates per level") {
  OrderBook book;
  book.submit_limit(1, Side::Bid, ticks(99), 2, 0.0);
  book.submit_limit(2, Side::Bid, ticks(99), 3, 0.0);
  book.submit_limit(3, Side::Bid, ticks(97), 1, 0.0);
  book.submit_limit(4, Side::Ask, ticks(103), 4, 0.0);
  book.submit_limit(5, Side::Ask, ticks(101), 6, 0.0);
  const std::vector<DepthLevel> want{
      {Side::Bid, ticks(99), 5, 2},
      {Side::Bid, ticks(97), 1, 1},
      {Side::Ask, ticks(101), 6, 1},
      {Side::Ask, ticks(103), 4, 1},
  };
  CHECK(book.depth_snapshot() == want);
}

TEST_CASE("self trades are allowed") {
  OrderBook book;
  book.submit_limit(7, Side::Ask, ticks(100), 1, 0.0);
  const MarketReport r = book.submit_market(7, Side::Bid, 1, 1.0);
  REQUIRE(r.trades.size() == 1);
  CHECK(r.trades[0].maker_agent == 7);
  CHECK(r.trades[0].taker_agent == 7);
}

TEST_CASE("invalid orders are rejected") {
  OrderBook book;
  CHECK_THROWS_AS(book.submit_limit(1, Side::Bid, ticks(100), 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(book.submit_limit(1, Side::Bid, ticks(0), 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(book.submit_market(1, Side::Bid, -1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(OrderBook(0.0), std::invalid_argument);
}

TEST_CASE("book never stays crossed and matches the reference matcher") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const auto res = testing::compare_random_flow(rng, 3000);
    CHECK(res.trades > 0);
    CHECK(res.mismatches == 0);
    CHECK(res.cancel_mismatches == 0);
    CHECK(res.book_mismatches == 0);
  }

  Rng rng(42);
  OrderBook book;
  for (int i = 0; i < 5000; ++i) {
    const Side s = rng.bernoulli(0.5) ? Side::Bid : Side::Ask;
    book.submit_limit(0, s, ticks(900 + static_cast<std::int64_t>(rng.below(200))), 1 + static_cast<Volume>(rng.below(5)), i);
    const BookQuotes q = book.quotes();
    if (q.best_bid && q.best_ask) REQUIRE(q.best_bid->ticks < q.best_ask->ticks);
  }
}

} // TEST_SUITE
