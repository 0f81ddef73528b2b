#pragma once

#include <string>

namespace fixtures {

// The worked single-day history: eleven edits on 21 March 2006, with
// two sha1-identical rollbacks (Mhking to Sarah's version, Brandon39 to
// Trezatium's). Hashes are the 12-hex prefixes padded to 40 digits.
inline const char* kDayTsv =
    "timestamp\tuser\tsha1\tcomment\n"
    "2006-03-21T02:08:00Z\tSarah\t4abc4aef1ea50000000000000000000000000000\t\n"
    "2006-03-21T05:02:00Z\tAlexh25\t1e3a2a4656d80000000000000000000000000000\t\n"
    "2006-03-21T05:04:00Z\tMhking\t4abc4aef1ea50000000000000000000000000000\t\n"
    "2006-03-21T11:39:00Z\tTrezatium\t3b03700b0d9c0000000000000000000000000000\t\n"
    "2006-03-21T12:15:00Z\tBrazilfantoo\t94a5c05ba10e0000000000000000000000000000\t\n"
    "2006-03-21T12:31:00Z\tBrandon39\t3b03700b0d9c0000000000000000000000000000\t\n"
    "2006-03-21T23:28:00Z\tTitoxd\t109986b8f3900000000000000000000000000000\t\n"
    "2006-03-21T23:31:00Z\tTitoxd\t334a315944ce0000000000000000000000000000\t\n"
    "2006-03-21T23:38:00Z\tTitoxd\t739c15e5bc6a0000000000000000000000000000\t\n"
    "2006-03-21T23:40:00Z\tTitoxd\t3063a02896800000000000000000000000000000\t\n"
    "2006-03-21T23:42:00Z\tTitoxd\t7aafc8f3f7620000000000000000000000000000\t\n";

inline const char* kDayTwoSymbol = "CCRCCRCCCCC";
inline const char* kDayThreeSymbol = "CNCNRNCNCNRNCCCCC";

// A three-revision export with one anonymous contributor and one
// revision whose hash was suppressed.
inline const char* kSmallDumpXml = R"(<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" version="0.10">
  <siteinfo><sitename>testwiki</sitename></siteinfo>
  <page>
    <title>Sample page</title>
    <ns>0</ns>
    <id>42</id>
    <revision>
      <id>1001</id>
      <timestamp>2006-03-21T02:08:00Z</timestamp>
      <contributor><username>Sarah</username><id>7</id></contributor>
      <comment>created</comment>
      <text>first text</text>
      <sha1>4abc4aef1ea50000000000000000000000000000</sha1>
    </revision>
    <revision>
      <id>1002</id>
      <timestamp>2006-03-21T05:02:00Z</timestamp>
      <contributor><ip>192.0.2.14</ip></contributor>
      <comment>drive-by edit</comment>
      <text>second text</text>
      <sha1>1e3a2a4656d80000000000000000000000000000</sha1>
    </revision>
    <revision>
      <id>1003</id>
      <timestamp>2006-03-21T05:04:00Z</timestamp>
      <contributor><username>Mhking</username><id>9</id></contributor>
      <comment></comment>
      <text>first text</text>
    </revision>
  </page>
</mediawiki>
)";

}  // namespace fixtures
