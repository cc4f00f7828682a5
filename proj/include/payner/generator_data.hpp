#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

// Vocabulary for the synthetic corpus generator. The lists deliberately
// overlap only partly with the shipped gazetteers so that lexicon features do
// not see every name at tagging time.

namespace payner::gen_data {

enum class Lang : std::uint8_t { EN, DE, ES, FR };

inline constexpr std::string_view lang_code(Lang l) {
  constexpr std::array<std::string_view, 4> codes = {"en", "de", "es", "fr"};
  return codes[static_cast<std::size_t>(l)];
}

using List = std::vector<std::string>;

inline const List& first_names(Lang l) {
  static const std::array<List, 4> v = {
      List{"JOHN", "JAMES", "MARY", "SARAH", "DAVID", "MICHAEL", "EMMA", "OLIVER", "THOMAS", "WILLIAM",
           "JESSICA", "ELIZABETH", "ROBERT", "LINDA", "DANIEL", "GEORGE", "CHARLOTTE", "HARRY", "AMELIA",
           "EDWARD", "HANNAH", "PETER", "RACHEL", "SIMON"},
      List{"HANS", "KLAUS", "PETRA", "SABINE", "STEFAN", "ANDREAS", "JÜRGEN", "MONIKA", "UWE", "BIRGIT",
           "MATTHIAS", "KATRIN", "WOLFGANG", "ULRIKE", "FRANK", "GÜNTER", "HEIKE", "DIETER", "ANKE", "JÖRG"},
      List{"JOSÉ", "MARÍA", "CARMEN", "ANTONIO", "MANUEL", "JAVIER", "LUCÍA", "ISABEL", "PABLO", "ELENA",
           "FRANCISCO", "ROSA", "MIGUEL", "PILAR", "ALEJANDRO", "ÁNGEL", "INÉS", "RAÚL", "NURIA", "SERGIO"},
      List{"JEAN", "PIERRE", "MARIE", "SOPHIE", "NICOLAS", "PHILIPPE", "FRANÇOIS", "ISABELLE", "CÉLINE",
           "NATHALIE", "LUC", "AMÉLIE", "JACQUES", "CLAIRE", "ÉRIC", "HÉLÈNE", "OLIVIER", "JULIEN", "MANON",
           "THÉO"},
  };
  return v[static_cast<std::size_t>(l)];
}

inline const List& last_names(Lang l) {
  static const std::array<List, 4> v = {
      List{"SMITH", "JONES", "TAYLOR", "BROWN", "WILLIAMS", "WILSON", "JOHNSON", "DAVIES", "ROBINSON",
           "WRIGHT", "THOMPSON", "EVANS", "WALKER", "WHITE", "ROBERTS", "GREEN", "HALL", "WOOD", "JACKSON",
           "CLARKE", "HUGHES", "PATEL", "MORGAN", "COOPER"},
      List{"MÜLLER", "SCHMIDT", "SCHNEIDER", "FISCHER", "WEBER", "MEYER", "WAGNER", "BECKER", "SCHULZ",
           "HOFFMANN", "KOCH", "RICHTER", "KLEIN", "WOLF", "SCHRÖDER", "NEUMANN", "ZIMMERMANN", "KRÜGER",
           "HARTMANN", "LANGE"},
      List{"GARCÍA", "MARTÍNEZ", "LÓPEZ", "SÁNCHEZ", "GONZÁLEZ", "RODRÍGUEZ", "FERNÁNDEZ", "PÉREZ", "GÓMEZ",
           "JIMÉNEZ", "RUIZ", "HERNÁNDEZ", "DÍAZ", "MORENO", "ÁLVAREZ", "ROMERO", "NAVARRO", "TORRES",
           "DOMÍNGUEZ", "VÁZQUEZ"},
      List{"MARTIN", "BERNARD", "DUBOIS", "DURAND", "MOREAU", "LAURENT", "PETIT", "LEROY", "SIMON", "MICHEL",
           "LEFÈVRE", "GARNIER", "FAURE", "ROUSSEAU", "BLANC", "GUÉRIN", "MULLER", "HENRY", "ROUSSEL",
           "PERRIN"},
  };
  return v[static_cast<std::size_t>(l)];
}

inline const List& honorifics(Lang l) {
  static const std::array<List, 4> v = {
      List{"MR", "MRS", "MS", "DR"},
      List{"HERR", "FRAU", "DR"},
      List{"SR", "SRA", "D"},
      List{"M", "MME", "MLLE"},
  };
  return v[static_cast<std::size_t>(l)];
}

inline const List& company_stems() {
  static const List v = {"ACME",     "GLOBEX",   "INITECH", "NORTHWIND", "CONTOSO",  "FABRIKAM", "VANDELAY",
                         "HOOLI",    "TYRELL",   "ORION",   "ATLAS",     "ALPINE",   "NORDIC",   "EUROTRADE",
                         "SILVERLINE", "BLUEWATER", "REDSTONE", "GREENFIELD", "SUNRISE", "HORIZON",  "PINNACLE",
                         "VERTEX",   "MERIDIAN", "KESTREL", "LUMEN",     "AURORA",   "CASCADE",  "SUMMIT"};
  return v;
}

inline const List& company_sectors(Lang l) {
  static const std::array<List, 4> v = {
      List{"TRADING", "LOGISTICS", "CONSULTING", "HOLDINGS", "SOLUTIONS", "TECHNOLOGIES", "FOODS", "MOTORS",
           "PROPERTIES", "INDUSTRIES"},
      List{"HANDEL", "LOGISTIK", "BERATUNG", "HOLDING", "TECHNIK", "BAU", "VERSAND", "IMMOBILIEN"},
      List{"COMERCIAL", "LOGÍSTICA", "CONSULTORES", "INVERSIONES", "TECNOLOGÍA", "ALIMENTOS", "INMOBILIARIA"},
      List{"COMMERCE", "LOGISTIQUE", "CONSEIL", "INVESTISSEMENTS", "TECHNOLOGIES", "ALIMENTATION", "IMMOBILIER"},
  };
  return v[static_cast<std::size_t>(l)];
}

inline const List& company_suffixes(Lang l) {
  static const std::array<List, 4> v = {
      List{"LTD", "PLC", "INC", "LLC", "LIMITED"},
      List{"GMBH", "AG", "KG", "GMBH CO KG"},
      List{"SL", "SA", "SLU"},
      List{"SARL", "SAS", "SA"},
  };
  return v[static_cast<std::size_t>(l)];
}

/// Banks used by the generator. The first block is also in the shipped
/// gazetteer; the rest are unseen by it.
inline const List& bank_names() {
  static const List v = {
      "DEUTSCHE BANK", "COMMERZBANK", "DZ BANK", "POSTBANK", "BNP PARIBAS", "SOCIETE GENERALE",
      "CREDIT AGRICOLE", "BARCLAYS BANK", "HSBC BANK", "LLOYDS BANK", "NATWEST", "BANCO SANTANDER", "BBVA",
      "CAIXABANK", "BANCO SABADELL", "ING BANK", "RABOBANK", "ABN AMRO", "UBS", "UNICREDIT", "KBC BANK",
      "ERSTE BANK", "CITIBANK", "WELLS FARGO", "BANK OF AMERICA", "CHASE BANK",
      // not in the gazetteer
      "BANKINTER", "HYPOVEREINSBANK", "TARGOBANK", "NATIXIS", "CREDIT MUTUEL", "ALLIED IRISH BANKS",
      "METRO BANK", "TRIODOS BANK", "BANCA SELLA", "CAPITAL ONE", "FIFTH THIRD BANK", "REGIONS BANK",
      "ABANCA", "KUTXABANK", "VOLKSBANK", "CAISSE D EPARGNE"};
  return v;
}

struct CountryInfo {
  std::string_view iso;
  std::array<std::string_view, 4> names;  // en, de, es, fr
  std::vector<std::string> cities;        // gazetteer-known first, then unseen
  std::vector<std::string> streets;
  std::string_view currency;
};

inline const std::vector<CountryInfo>& countries() {
  static const std::vector<CountryInfo> v = {
      {"GB", {"UNITED KINGDOM", "GROSSBRITANNIEN", "REINO UNIDO", "ROYAUME-UNI"},
       {"LONDON", "MANCHESTER", "EDINBURGH", "BIRMINGHAM", "BRISTOL", "LEEDS", "GLASGOW", "OXFORD"},
       {"HIGH STREET", "STATION ROAD", "CHURCH LANE", "PARK AVENUE", "VICTORIA ROAD", "MILL LANE"}, "GBP"},
      {"IE", {"IRELAND", "IRLAND", "IRLANDA", "IRLANDE"}, {"DUBLIN", "CORK", "GALWAY", "LIMERICK"},
       {"MAIN STREET", "O CONNELL STREET", "GRAFTON STREET"}, "EUR"},
      {"US", {"UNITED STATES", "USA", "ESTADOS UNIDOS", "ETATS-UNIS"},
       {"NEW YORK", "CHICAGO", "LOS ANGELES", "HOUSTON", "BOSTON", "MIAMI", "DENVER", "SEATTLE", "AUSTIN",
        "ATLANTA"},
       {"MAIN STREET", "OAK AVENUE", "MAPLE DRIVE", "WASHINGTON BLVD", "ELM STREET"}, "USD"},
      {"DE", {"GERMANY", "DEUTSCHLAND", "ALEMANIA", "ALLEMAGNE"},
       {"BERLIN", "HAMBURG", "MÜNCHEN", "FRANKFURT", "KÖLN", "STUTTGART", "LEIPZIG", "DRESDEN", "BREMEN",
        "HANNOVER"},
       {"HAUPTSTRASSE", "BAHNHOFSTRASSE", "GARTENSTRASSE", "SCHILLERSTRASSE", "GOETHESTRASSE", "LINDENWEG"},
       "EUR"},
      {"AT", {"AUSTRIA", "ÖSTERREICH", "AUSTRIA", "AUTRICHE"}, {"WIEN", "GRAZ", "LINZ", "SALZBURG"},
       {"RINGSTRASSE", "KIRCHENGASSE", "HAUPTPLATZ"}, "EUR"},
      {"CH", {"SWITZERLAND", "SCHWEIZ", "SUIZA", "SUISSE"}, {"ZÜRICH", "GENÈVE", "BASEL", "BERN", "LAUSANNE"},
       {"BAHNHOFSTRASSE", "RUE DU RHONE", "MARKTGASSE"}, "CHF"},
      {"ES", {"SPAIN", "SPANIEN", "ESPAÑA", "ESPAGNE"},
       {"MADRID", "BARCELONA", "VALENCIA", "SEVILLA", "ZARAGOZA", "BILBAO", "MÁLAGA", "MURCIA"},
       {"CALLE MAYOR", "GRAN VÍA", "CALLE ALCALÁ", "PASEO DE GRACIA", "AVENIDA DIAGONAL"}, "EUR"},
      {"FR", {"FRANCE", "FRANKREICH", "FRANCIA", "FRANCE"},
       {"PARIS", "LYON", "MARSEILLE", "LILLE", "TOULOUSE", "BORDEAUX", "NANTES", "STRASBOURG"},
       {"RUE DE LA PAIX", "AVENUE VICTOR HUGO", "RUE DU COMMERCE", "BOULEVARD HAUSSMANN", "RUE NATIONALE"},
       "EUR"},
      {"BE", {"BELGIUM", "BELGIEN", "BÉLGICA", "BELGIQUE"}, {"BRUXELLES", "ANTWERP", "GHENT", "LIÈGE"},
       {"RUE ROYALE", "AVENUE LOUISE", "KERKSTRAAT"}, "EUR"},
      {"NL", {"NETHERLANDS", "NIEDERLANDE", "PAÍSES BAJOS", "PAYS-BAS"},
       {"AMSTERDAM", "ROTTERDAM", "UTRECHT", "EINDHOVEN"}, {"KERKSTRAAT", "DORPSSTRAAT", "MARKT"}, "EUR"},
      {"IT", {"ITALY", "ITALIEN", "ITALIA", "ITALIE"}, {"ROME", "MILAN", "TURIN", "NAPLES", "FLORENCE"},
       {"VIA ROMA", "VIA GARIBALDI", "CORSO ITALIA"}, "EUR"},
  };
  return v;
}

/// Country pool per language, as indices into countries().
inline const std::vector<std::size_t>& lang_countries(Lang l) {
  static const std::array<std::vector<std::size_t>, 4> v = {
      std::vector<std::size_t>{0, 1, 2, 9, 10}, std::vector<std::size_t>{3, 4, 5},
      std::vector<std::size_t>{6}, std::vector<std::size_t>{7, 8}};
  return v[static_cast<std::size_t>(l)];
}

/// IBAN country layouts: total length and a BBAN pattern where 'n' is a digit,
/// 'a' an upper-case letter and 'c' alphanumeric.
struct IbanLayout {
  std::string_view country;
  std::string_view bban;
};

inline const std::vector<IbanLayout>& iban_layouts() {
  static const std::vector<IbanLayout> v = {
      {"GB", "aaaannnnnnnnnnnnnn"},     {"IE", "aaaannnnnnnnnnnnnn"},      {"DE", "nnnnnnnnnnnnnnnnnn"},
      {"AT", "nnnnnnnnnnnnnnnn"},       {"CH", "nnnnnccccccccccccc"},      {"ES", "nnnnnnnnnnnnnnnnnnnn"},
      {"FR", "nnnnnnnnnnccccccccccnnn"}, {"BE", "nnnnnnnnnnnn"},           {"NL", "aaaannnnnnnnnn"},
      {"IT", "annnnnnnnnnccccccccccccc"}, {"LU", "nnnccccccccccccc"},      {"PT", "nnnnnnnnnnnnnnnnnnnnn"},
  };
  return v;
}

inline const List& months(Lang l) {
  static const std::array<List, 4> v = {
      List{"JANUARY", "FEBRUARY", "MARCH", "APRIL", "MAY", "JUNE", "JULY", "AUGUST", "SEPTEMBER", "OCTOBER",
           "NOVEMBER", "DECEMBER"},
      List{"JANUAR", "FEBRUAR", "MÄRZ", "APRIL", "MAI", "JUNI", "JULI", "AUGUST", "SEPTEMBER", "OKTOBER",
           "NOVEMBER", "DEZEMBER"},
      List{"ENERO", "FEBRERO", "MARZO", "ABRIL", "MAYO", "JUNIO", "JULIO", "AGOSTO", "SEPTIEMBRE", "OCTUBRE",
           "NOVIEMBRE", "DICIEMBRE"},
      List{"JANVIER", "FÉVRIER", "MARS", "AVRIL", "MAI", "JUIN", "JUILLET", "AOÛT", "SEPTEMBRE", "OCTOBRE",
           "NOVEMBRE", "DÉCEMBRE"},
  };
  return v[static_cast<std::size_t>(l)];
}

/// Remittance templates: {REF}, {MONTH} and {YEAR} are substituted.
inline const List& purposes(Lang l) {
  static const std::array<List, 4> v = {
      List{"INVOICE {REF}", "PAYMENT OF INVOICE {REF}", "SALARY {MONTH} {YEAR}", "RENT {MONTH} {YEAR}",
           "CONSULTING SERVICES {MONTH}", "ORDER {REF}", "LOAN REPAYMENT {REF}", "SUBSCRIPTION FEE {YEAR}",
           "TUITION FEES {YEAR}", "INSURANCE PREMIUM {REF}", "GOODS PURCHASE {REF}", "DIVIDEND {YEAR}"},
      List{"RECHNUNG {REF}", "RECHNUNG NR {REF}", "GEHALT {MONTH} {YEAR}", "MIETE {MONTH} {YEAR}",
           "BESTELLUNG {REF}", "DARLEHEN RATE {REF}", "BEITRAG {YEAR}", "WARENLIEFERUNG {REF}"},
      List{"FACTURA {REF}", "PAGO FACTURA {REF}", "NÓMINA {MONTH} {YEAR}", "ALQUILER {MONTH} {YEAR}",
           "PEDIDO {REF}", "CUOTA PRÉSTAMO {REF}", "SUSCRIPCIÓN {YEAR}"},
      List{"FACTURE {REF}", "RÈGLEMENT FACTURE {REF}", "SALAIRE {MONTH} {YEAR}", "LOYER {MONTH} {YEAR}",
           "COMMANDE {REF}", "REMBOURSEMENT PRÊT {REF}", "COTISATION {YEAR}"},
  };
  return v[static_cast<std::size_t>(l)];
}

inline const List& ref_prefixes() {
  static const List v = {"INV", "PO", "ORD", "RE", "CN", "REF", "FA", "CT"};
  return v;
}

/// Free-text phrases that carry no entity.
inline const List& filler_phrases(Lang l) {
  static const std::array<List, 4> v = {
      List{"PLEASE ADVISE BENEFICIARY", "CHARGES AS AGREED", "PAYMENT UNDER STANDING INSTRUCTIONS",
           "NO FURTHER ADVICE WILL FOLLOW", "KINDLY CONFIRM RECEIPT", "COVER SENT SEPARATELY",
           "PLEASE CREDIT WITHOUT DELAY", "AS PER OUR TELEPHONE CONVERSATION", "SEE ATTACHED DETAILS",
           "URGENT PROCESSING REQUESTED", "FUNDS TO BE CREDITED SAME DAY", "DETAILS TO FOLLOW"},
      List{"BITTE BEGÜNSTIGTEN BENACHRICHTIGEN", "GEBÜHREN WIE VEREINBART", "OHNE WEITERE NACHRICHT",
           "BITTE EINGANG BESTÄTIGEN", "EILIGE AUSFÜHRUNG ERBETEN", "DETAILS FOLGEN"},
      List{"FAVOR AVISAR AL BENEFICIARIO", "GASTOS SEGÚN LO ACORDADO", "SIN MÁS AVISO",
           "CONFIRMAR RECEPCIÓN POR FAVOR", "PROCESAMIENTO URGENTE", "DETALLES A CONTINUACIÓN"},
      List{"MERCI D AVISER LE BÉNÉFICIAIRE", "FRAIS SELON ACCORD", "SANS AUTRE AVIS",
           "MERCI DE CONFIRMER LA RÉCEPTION", "TRAITEMENT URGENT", "DÉTAILS À SUIVRE"},
  };
  return v[static_cast<std::size_t>(l)];
}

inline const List& ach_entry_descriptions() {
  static const List v = {"PAYROLL", "VENDOR PMT", "EXP REIMB", "DIVIDEND", "RENT", "INSURANCE", "PENSION",
                         "TAX REFUND"};
  return v;
}

}  // namespace payner::gen_data
