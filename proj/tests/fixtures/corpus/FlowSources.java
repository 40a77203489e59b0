package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class FlowSources {
  /**
   * Parses the header.
   * @throws java.text.ParseException when the header is malformed
   */
  void parseIt(String s) {
  }

  void readIt(Channel ch) throws IOException {
    ch.read();
  }

  void run(Channel ch, Link link) {
    try {
      parseIt("x");
      readIt(ch);
      link.connect("host");
      if (ch == null) {
        throw new IllegalArgumentException("ch");
      }
    } catch (IOException | java.text.ParseException e) {
      handle(e);
    } catch (RuntimeException e) {
      throw e;
    }
  }

  private void handle(Throwable t) {}
}
