package fx;

import fx.io.Channel;
import fx.net.Link;
import fx.util.Clock;
import fx.util.Text;
import java.io.*;

class UnreachableHandlerNeg {
  void run(Channel ch) {
    try {
      ch.read();
      Text.parse("1.0");
    } catch (IOException e) {
      handle(e);
    } catch (java.text.ParseException e) {
      handle(e);
    }
  }

  private void handle(Throwable t) {}
}
