#include "fccfold/benchmark.hpp"

#include <sstream>

#include "fccfold/error.hpp"

namespace fccfold {

namespace {

struct SuiteRow {
  const char* id;
  const char* sequence;
  int length;
  int h_count;
};

// id, sequence, length, H count.
constexpr SuiteRow kSuite[] = {
    {"4RXN", "MKKYTCTVCGYIYNPEDGDPDNGVNPSTDFKIPDDWVCPGCVGKDFEEVEEAAA", 54, 27},
    {"1ENH", "RPRTAFSSEQLARLKRNFNRYLTERRRQLSSELGLNEAQIKIWFQNKRAKSSSS", 54, 19},
    {"4PTI", "RPDFCLEPPYTGPCKARIIRYFYNKAGLCQTFVYGGCRAKRNNFKSAEDCMRAAGGAA", 58, 32},
    {"2IGD", "MTPAVTTYKLVINGKTLKGETTTKAVDAETAEKAFKQYANDNGVDGVWVSDDSTKTSTSTE", 61, 25},
    {"1YPA", "MKTEWPELVGKAVAAAKKVILQDKPEAQIIVLPVGTIVTMEYRIDRVRLFVDKLDNIAQVPRVS", 64, 38},
    {"1R69", "SISSRVKSKRIQLGLNQAELAQKVGTQQSIEQLENGKTKRPRFLPELASALGVSDWLLNGTSDSNVRAS", 69,
     30},
    {"1CTF", "AAEEKTEFDVILKAAGANKVAVIKAVRGATGLGLKEAKDLVESAPAALKEGVSKDDAEALKKALEEAGAEVEVK",
     74, 42},
    {"3MX7",
     "MTDLVAVWDVALSDGVHKEIFEHGTTSQKRVVYVDGKKEIRKEWMFKLVGKETFFYVGAAKTKATINIDAISGFAYEYTLSNSK"
     "SSKKSS",
     90, 44},
    {"3NBM",
     "SNASKELKVLVLCAGSGTSAQLANAINEGANLTEVRVIANSYGAYGAHYDIMGVYDLIILAPQVRSYYREMKVDAERLGIQIVA"
     "TRGMEYIHLTKSSSKSSQSSSEHS",
     108, 56},
    {"3MQO",
     "PAIDYKTAFLHAPIGLVLSRDRVIEDCNDELAIFRCARADLIGRSFEVLYPSSDEFERIGERISPMIAHGSYADDRIMKRAGGE"
     "LFWCHVTGRALDRAPLAAGVWTFEDLSATRRVAASA",
     120, 68},
    {"3MRO",
     "SNALSASEERFQLAVSGASAGLWDWNPKTGAMYLSPHFKKIMGYEDHELPEITGHRESIHPDDRARVLAALKAHLEHRDITYDV"
     "EYRVTRSGDFRWIQRGQALWNSAGEPYRMVGVWISDSTDKRKREDESRSREESRRSSS",
     142, 63},
    {"3PNX",
     "ELPLSKMNLGGIGKMLLEMMKEEKAPKLSDLLSGARKKEVKFYACQLSVEIMGFKKEELFPEVQIMDVKEYLKNALESIDLQIF"
     "IGMENKKMNNLLFSGDYDKALASLIANAAREMEIEVTFICAFWGLLLLRLDPEKASQEDKSLYEQAFSSLTSRESE",
     160, 84},
};

}  // namespace

const std::vector<BenchmarkEntry>& builtin_suite() {
  static const std::vector<BenchmarkEntry> kEntries = [] {
    std::vector<BenchmarkEntry> entries;
    for (const auto& row : kSuite) {
      entries.push_back(
          {row.id, row.sequence, row.length, row.h_count, std::string()});
    }
    return entries;
  }();
  return kEntries;
}

const BenchmarkEntry& suite_entry(const std::string& id) {
  for (const auto& entry : builtin_suite()) {
    if (entry.id == id) return entry;
  }
  throw FoldError("unknown benchmark protein '" + id + "'");
}

void self_check_suite() {
  for (const auto& entry : builtin_suite()) {
    const Sequence seq = entry.parse();
    if (seq.length() != entry.length || seq.h_count() != entry.h_count) {
      std::ostringstream msg;
      msg << "benchmark suite self-check failed for " << entry.id << ": got ("
          << seq.length() << ", " << seq.h_count() << "), registered ("
          << entry.length << ", " << entry.h_count << ")";
      throw FoldError(msg.str());
    }
  }
}

}  // namespace fccfold
